"""Elimination filters for ghost-class candidates and the end-to-end classifier.

Each ``w`` in ``W^{P0}`` indexes a summand of ``H^{l(w)}`` of the minimal
boundary face; it can only feed ghost classes in degree ``l(w) + 1``.  Three
filters may rule it out:

* middle weight: its pure weight ``-2c - 2 n1`` is below the middle weight
  ``l(w) + 1 - 2c``;
* image of ``r2``: ``w = u v`` in ``W_2^0 W^{P2}`` with ``u != e`` and the
  GL2-factor of ``v * lambda`` not one-dimensional (``n1 != n2``);
* image of ``r1``: ``w = u v`` in ``W_1^0 W^{P1}`` with ``u != e``, the
  Eisenstein series holomorphic at the evaluation point (``-n2 > threshold``)
  and the companion summand ``v`` already in the image of ``r2``.

Symbolic mode returns per-element survival conditions in the ``a_i`` under
the dominance constraints; concrete mode returns booleans and is computed by
a separate numeric path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .affine import AffineForm
from .conditions import (FALSE, TRUE, Atom, Condition, Simplified, atom, conj, neg, simplify)
from .errors import DomainError
from .hodge import boundary_face_weight, middle_weight
from .kostant import coset_factorize, dot_action, kostant_representatives, label_of
from .rootsys import RootSystemData, SymbolicWeight, half_sum, validate_highest_weight
from .weyl import WeylElement

PROVEN_CASES = (4, 5)


def dominance_atoms(rs: RootSystemData) -> list[Atom]:
    """Dominance constraints on ``a_1..a_l`` as atoms.

    Parity ties ``c`` to the ``a_i`` but never restricts the ``a_i`` (``c`` is
    free), so it does not appear here.
    """
    a = [AffineForm.var(f"a{i}") for i in range(1, rs.l + 1)]
    conds = [atom(a[k] - a[k + 1], ">=") for k in range(rs.l - 1)]
    if rs.lie_type == "B":
        conds.append(atom(a[-1], ">="))
    else:
        conds.append(atom(a[-2] + a[-1], ">="))
    return [c.args[0] for c in conds]


@lru_cache(maxsize=None)
def _threshold(n: int) -> Fraction:
    from .rootsys import build_root_system

    rs = build_root_system(n)
    rho_p0 = half_sum(rs.parabolic(0).delta, rs.l)
    # <-(n + rho), e2^vee> > <rho_P0, e2^vee>  <=>  -n2 > rho_2 + (rho_P0)_2
    return rs.rho_values[1] + rho_p0[1]


def eisenstein_threshold(rs: RootSystemData) -> Fraction:
    """``t`` such that holomorphy at the evaluation point reads ``-n2 > t``."""
    return _threshold(rs.n)


def _symbolic(rs: RootSystemData) -> SymbolicWeight:
    return SymbolicWeight.symbolic(rs.l)


def filter_middle_weight(w: WeylElement, rs: RootSystemData) -> Condition:
    """Survival: weight of the summand at least the middle weight of ``H^{l(w)+1}``."""
    lam = _symbolic(rs)
    q = kostant_representatives(rs, 0).length_of(w) + 1
    gap = boundary_face_weight(w, lam, rs) - middle_weight(q, lam)
    return atom(gap, ">=")


def filter_r2(w: WeylElement, rs: RootSystemData) -> Condition:
    """Survival outside the image of ``r2``; ``TRUE`` when the left factor is trivial."""
    fz = coset_factorize(w, rs, 2)
    if fz.tilde.is_identity():
        return TRUE
    d = dot_action(fz.rep, _symbolic(rs), rs)
    return atom(d.eps[0] - d.eps[1], "==")


def filter_r1(w: WeylElement, rs: RootSystemData) -> Condition:
    """Survival outside ``Im(r1) + Im(r2)``; ``TRUE`` when the left factor is trivial."""
    fz = coset_factorize(w, rs, 1)
    if fz.tilde.is_identity():
        return TRUE
    d = dot_action(w, _symbolic(rs), rs)
    holomorphic = atom(-d.eps[1] - eisenstein_threshold(rs), ">")
    companion_in_r2 = neg(filter_r2(fz.rep, rs))
    return neg(conj(holomorphic, companion_in_r2))


# ---------------------------------------------------------------------------
# concrete path


def _concrete_filters(w: WeylElement, rs: RootSystemData, lam: SymbolicWeight) -> tuple[bool, bool, bool]:
    p0 = kostant_representatives(rs, 0)
    n1 = dot_action(w, lam, rs).eps[0].const
    f1 = -2 * n1 >= p0.length_of(w) + 1

    def r2(x: WeylElement) -> bool:
        fz = coset_factorize(x, rs, 2)
        if fz.tilde.is_identity():
            return True
        d = dot_action(fz.rep, lam, rs).constant_eps()
        return d[0] == d[1]

    f2 = r2(w)
    fz1 = coset_factorize(w, rs, 1)
    if fz1.tilde.is_identity():
        f3 = True
    else:
        n2 = dot_action(w, lam, rs).eps[1].const
        f3 = not (-n2 > eisenstein_threshold(rs) and not r2(fz1.rep))
    return f1, f2, f3


# ---------------------------------------------------------------------------
# records


@dataclass(frozen=True)
class GhostRecord:
    """Classification of one ``w`` in ``W^{P0}``.

    In symbolic mode ``survival`` is a :class:`Condition` (with ``summary`` its
    simplified description) and ``filter_trace`` holds the three filter
    conditions; in concrete mode both are booleans.
    """

    n: int
    element: WeylElement
    label: str
    length: int
    degree: int
    weight: AffineForm
    offset: AffineForm
    survival: Condition | bool
    filter_trace: tuple
    extrapolated: bool
    summary: Simplified | None = None

    @property
    def survives(self) -> bool:
        if isinstance(self.survival, bool):
            return self.survival
        return not self.survival.is_false

    @property
    def display_label(self) -> str:
        return self.label if self.n in PROVEN_CASES else f"[{self.element.render()}]"

    def survival_text(self) -> str:
        if isinstance(self.survival, bool):
            return "yes" if self.survival else "no"
        return self.summary.text

    def offsets(self) -> list[AffineForm]:
        """Offset from the middle weight on each surviving disjunct."""
        if isinstance(self.survival, bool):
            return [self.offset] if self.survival else []
        return [t.substitute(self.offset) for t in self.summary.terms]


def _as_concrete(rs: RootSystemData, lam) -> tuple[SymbolicWeight, dict] | None:
    if lam is None:
        return None
    if isinstance(lam, SymbolicWeight):
        if any(not x.is_constant() for x in lam.eps) or not lam.kappa.is_constant():
            raise DomainError("classify takes a fully symbolic (None) or fully concrete weight")
        a = [x.const for x in lam.eps]
        c = lam.kappa.const
    elif isinstance(lam, Mapping):
        try:
            a = [lam[f"a{i}"] for i in range(1, rs.l + 1)]
            c = lam["c"]
        except KeyError as exc:
            raise DomainError(f"missing weight coefficient {exc.args[0]}") from None
    else:
        a, c = lam
        a = list(a)
    if any(Fraction(x).denominator != 1 for x in list(a) + [c]):
        raise DomainError("highest weight coefficients must be integers")
    a = [int(x) for x in a]
    c = int(c)
    verdict = validate_highest_weight(a, c, rs.n)
    if not verdict.valid:
        raise DomainError(f"invalid highest weight: {verdict.violation}")
    assignment = {f"a{i}": x for i, x in enumerate(a, 1)}
    assignment["c"] = c
    return SymbolicWeight.from_values(a, c), assignment


@lru_cache(maxsize=None)
def _symbolic_records(n: int) -> tuple[GhostRecord, ...]:
    from .rootsys import build_root_system

    rs = build_root_system(n)
    lam = _symbolic(rs)
    domain = dominance_atoms(rs)
    p0 = kostant_representatives(rs, 0)
    out = []
    for w, ell in zip(p0.elements, p0.lengths):
        q = ell + 1
        weight = boundary_face_weight(w, lam, rs)
        trace = (filter_middle_weight(w, rs), filter_r2(w, rs), filter_r1(w, rs))
        summary = simplify(conj(*trace), domain)
        out.append(GhostRecord(n, w, label_of(w, rs), ell, q, weight, weight - middle_weight(q, lam),
                               summary.condition, trace, n not in PROVEN_CASES, summary))
    return tuple(out)


def classify(rs: RootSystemData, lam=None) -> list[GhostRecord]:
    """One record per ``w`` in ``W^{P0}``, in table order.

    ``lam`` is ``None`` (symbolic), a concrete :class:`SymbolicWeight`, a
    mapping ``{"a1": .., "c": ..}`` or a pair ``(coefficients, c)``.
    """
    concrete = _as_concrete(rs, lam)
    if concrete is None:
        return list(_symbolic_records(rs.n))
    weight_vec, _ = concrete
    p0 = kostant_representatives(rs, 0)
    out = []
    for w, ell in zip(p0.elements, p0.lengths):
        q = ell + 1
        weight = boundary_face_weight(w, weight_vec, rs)
        trace = _concrete_filters(w, rs, weight_vec)
        out.append(GhostRecord(rs.n, w, label_of(w, rs), ell, q, weight,
                               weight - middle_weight(q, weight_vec), all(trace), trace,
                               rs.n not in PROVEN_CASES))
    return out


def survivors(records: Sequence[GhostRecord]) -> list[GhostRecord]:
    return [r for r in records if r.survives]


def evaluate_symbolic(record: GhostRecord, assignment: Mapping[str, int]) -> bool:
    """Survival of a symbolic record at a concrete (valid) assignment."""
    if isinstance(record.survival, bool):
        raise DomainError("record is already concrete")
    return record.survival.evaluate(assignment)


__all__ = [
    "FALSE", "TRUE", "GhostRecord", "classify", "dominance_atoms", "eisenstein_threshold",
    "evaluate_symbolic", "filter_middle_weight", "filter_r1", "filter_r2", "survivors",
]
