"""Self-check suite behind ``ghostclass check``.

Every family is a function ``(n_values) -> list[str]`` returning failure
messages; an empty list is a pass.  Families are run in a fixed order so the
report is byte-stable.
"""

from __future__ import annotations

import itertools
import json
import math
import random
from importlib import resources
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import _kernels
from .affine import AffineForm, var_key
from .conditions import atom, conj, disj, equivalent, implies
from .ghostfilter import (classify, dominance_atoms, eisenstein_threshold, filter_middle_weight)
from .hodge import boundary_face_weight, middle_weight
from .kostant import (closed_form_membership, coset_factorize, dot_action, is_kostant_member,
                      kostant_representatives, w0_closed_form, w0_set)
from .rootsys import Root, SymbolicWeight, build_root_system, half_sum, validate_highest_weight
from .tables import FIXTURE_CASES, compare_with_fixture
from .weyl import act_on_weight, compose, enumerate_weyl, group_inversions, length

# keeps the O(|W|^2) families affordable
PAIR_LIMIT = 5
SAMPLE_PAIRS = 400


@dataclass(frozen=True)
class CheckResult:
    name: str
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def _root_counts(ns):
    out = []
    for n in ns:
        rs = build_root_system(n)
        want = rs.l ** 2 if rs.lie_type == "B" else rs.l * (rs.l - 1)
        if len(rs.positive_roots) != want:
            out.append(f"n={n}: {len(rs.positive_roots)} positive roots, want {want}")
        two_rho = [sum(r.coords[k] for r in rs.positive_roots) for k in range(rs.l)]
        if [2 * x for x in rs.rho_values] != two_rho:
            out.append(f"n={n}: 2 rho differs from the root sum")
    return out


def _parabolic_roots(ns):
    out = []
    for n in ns:
        rs = build_root_system(n)
        d0, d1, d2 = (set(rs.parabolic(i).delta) for i in range(3))
        if d1 | d2 != d0:
            out.append(f"n={n}: Delta1 | Delta2 != Delta0")
        if d0 - d2 != {Root.from_terms(rs.l, (1, 1), (2, -1))}:
            out.append(f"n={n}: Delta0 - Delta2 is not {{e1-e2}}")
        if not validate_highest_weight([0] * rs.l, 0, n):
            out.append(f"n={n}: zero weight rejected")
    return out


def _group_order(ns):
    out = []
    for n in ns:
        rs = build_root_system(n)
        elems = enumerate_weyl(rs)
        want = 2 ** rs.l * math.factorial(rs.l) // (1 if rs.lie_type == "B" else 2)
        if len(elems) != want or len(set(elems)) != want:
            out.append(f"n={n}: |W| = {len(elems)} (distinct {len(set(elems))}), want {want}")
        p0 = kostant_representatives(rs, 0)
        if len(p0) != 4 * rs.l * (rs.l - 1):
            out.append(f"n={n}: |W^P0| = {len(p0)}, want {4 * rs.l * (rs.l - 1)}")
    return out


def _lengths(ns):
    out = []
    for n in ns:
        rs = build_root_system(n)
        elems = enumerate_weyl(rs)
        lens = group_inversions(rs).sum(axis=1)
        if _kernels.HAVE_NUMBA:
            other = group_inversions(rs, backend="numpy").sum(axis=1)
            if not np.array_equal(lens, other):
                out.append(f"n={n}: numba and numpy kernels disagree")
        if list(lens).count(0) != 1 or list(lens).count(len(rs.positive_roots)) != 1:
            out.append(f"n={n}: identity or longest element not unique")
        for w, ell in zip(elems, lens):
            if rs.l <= 4 and length(w.inverse(), rs) != ell:
                out.append(f"n={n}: l(w^-1) != l(w) for {w.render()}")
                break
            if rs.lie_type == "D" and len(w.flips) % 2:
                out.append(f"n={n}: odd sign change in {w.render()}")
                break
    return out


def _closed_form(ns):
    out = []
    for n in ns:
        rs = build_root_system(n)
        sets = [set(kostant_representatives(rs, i)) for i in range(3)]
        for w in enumerate_weyl(rs):
            for i in range(3):
                if closed_form_membership(w, rs, i) != (w in sets[i]):
                    out.append(f"n={n}, i={i}: closed form disagrees at {w.render()}")
        for i in range(3):
            sample = list(sets[i])[:50]
            if any(not is_kostant_member(w, rs, i) for w in sample):
                out.append(f"n={n}, i={i}: root-set membership disagrees with the kernel")
    return out


def _kostant_shape(ns):
    out = []
    for n in ns:
        rs = build_root_system(n)
        for i in range(3):
            ks = kostant_representatives(rs, i)
            if max(ks.lengths) != len(ks.parabolic.delta):
                out.append(f"n={n}, i={i}: max length {max(ks.lengths)} != |Delta_{i}|")
            top = max(ks.lengths)
            counts = [ks.lengths.count(k) for k in range(top + 1)]
            if counts != counts[::-1]:
                out.append(f"n={n}, i={i}: length generating function not palindromic")
    return out


def _coset_bijection(ns):
    out = []
    for n in ns:
        rs = build_root_system(n)
        p0 = kostant_representatives(rs, 0)
        for i in (1, 2):
            pi = kostant_representatives(rs, i)
            w0 = w0_set(rs, i)
            if len(w0) * len(pi) != len(p0):
                out.append(f"n={n}, i={i}: |W_i^0| |W^Pi| != |W^P0|")
            seen = set()
            for u, v in itertools.product(w0, pi):
                w = compose(u, v)
                if w not in p0 or p0.length_of(w) != p0.length_of(u) + pi.length_of(v):
                    out.append(f"n={n}, i={i}: bad product {u.render()} . {v.render()}")
                    break
                seen.add(w)
            if len(seen) != len(p0):
                out.append(f"n={n}, i={i}: product map not onto W^P0")
            for w in p0:
                fz = coset_factorize(w, rs, i)
                if compose(fz.tilde, fz.rep) != w:
                    out.append(f"n={n}, i={i}: factorisation of {w.render()} does not multiply back")
            for w in enumerate_weyl(rs) if rs.l <= 4 else p0:
                if w0_closed_form(w, rs, i) != (w in set(w0)):
                    out.append(f"n={n}, i={i}: W_i^0 description disagrees at {w.render()}")
                    break
    return out


def _pairs(elems, n):
    if len(elems) <= 60 or n <= PAIR_LIMIT:
        return itertools.product(elems, elems)
    rng = random.Random(n)
    return [(rng.choice(elems), rng.choice(elems)) for _ in range(SAMPLE_PAIRS)]


def _dot_action(ns):
    out = []
    for n in ns:
        rs = build_root_system(n)
        lam = SymbolicWeight.symbolic(rs.l)
        elems = enumerate_weyl(rs)
        for w1, w2 in _pairs(elems, n):
            if dot_action(compose(w1, w2), lam, rs) != dot_action(w1, dot_action(w2, lam, rs), rs):
                out.append(f"n={n}: dot action not compatible at {w1.render()}, {w2.render()}")
                break
            lw = length(compose(w1, w2), rs) if rs.l <= 4 else None
            if lw is not None and lw > length(w1, rs) + length(w2, rs):
                out.append(f"n={n}: length not subadditive")
                break
        values = SymbolicWeight.from_values(range(1, rs.l + 1))
        for w in elems[:200]:
            moved = act_on_weight(w, values).constant_eps()
            if sorted(abs(x) for x in moved) != list(range(1, rs.l + 1)):
                out.append(f"n={n}: action does not permute |coordinates| for {w.render()}")
                break
    return out


def _levi_dominance(ns):
    out = []
    for n in ns:
        rs = build_root_system(n)
        a = [3 * (rs.l - k) for k in range(rs.l)]
        c = sum(a) % 2
        lam = SymbolicWeight.from_values(a, c)
        for i in range(3):
            ks = kostant_representatives(rs, i)
            for w in ks:
                d = dot_action(w, lam, rs).constant_eps()
                for alpha in ks.parabolic.levi_simple_roots:
                    pairing = 2 * sum(x * y for x, y in zip(d, alpha.coords)) / sum(y * y for y in alpha.coords)
                    if pairing < 0:
                        out.append(f"n={n}, i={i}: {w.render()} * lambda not dominant for {alpha.render()}")
    return out


def _weights(ns):
    out = []
    for n in ns:
        rs = build_root_system(n)
        lam = SymbolicWeight.symbolic(rs.l)
        p0 = kostant_representatives(rs, 0)
        for w, ell in zip(p0.elements, p0.lengths):
            n1 = dot_action(w, lam, rs).eps[0]
            gap = boundary_face_weight(w, lam, rs) - middle_weight(ell + 1, lam)
            if gap != -2 * n1 - (ell + 1):
                out.append(f"n={n}: offset identity fails at {w.render()}")
            if boundary_face_weight(w, lam, rs).coeff("c") != -2:
                out.append(f"n={n}: c-coefficient of the weight is not -2")
            f1 = filter_middle_weight(w, rs)
            if f1.op == "atom" and (len(f1.args[0].lhs.variables) != 1
                                    or abs(f1.args[0].lhs.coeffs[0][1]) != 1):
                out.append(f"n={n}: middle-weight atom is not unit univariate at {w.render()}")
    return out


def _threshold(ns):
    out = []
    expected = {5: 3, 4: 2}
    for n in ns:
        rs = build_root_system(n)
        t = eisenstein_threshold(rs)
        rho_p0 = half_sum(rs.parabolic(0).delta, rs.l)
        if t != rs.rho_values[1] + rho_p0[1]:
            out.append(f"n={n}: threshold {t} inconsistent with rho and Delta0")
        if n in expected and t != expected[n]:
            out.append(f"n={n}: threshold {t}, want {expected[n]}")
    return out


def _box_points(rs, bound):
    for a in itertools.product(range(-bound, bound + 1), repeat=rs.l):
        c = sum(a) % 2
        if validate_highest_weight(list(a), c, rs.n):
            yield list(a), c


def _agreement(ns, bound: int = 3):
    out = []
    for n in ns:
        if n > 7:
            continue
        rs = build_root_system(n)
        symbolic = classify(rs)
        for a, c in _box_points(rs, bound):
            assignment = {f"a{i}": x for i, x in enumerate(a, 1)} | {"c": c}
            concrete = classify(rs, (a, c))
            for s, k in zip(symbolic, concrete):
                if s.survival.evaluate(assignment) != k.survival:
                    out.append(f"n={n}: symbolic and concrete disagree at {a} for {s.display_label}")
                    break
        domain = dominance_atoms(rs)
        for rec in symbolic:
            if not equivalent(rec.survival, conj(*rec.filter_trace), domain):
                out.append(f"n={n}: simplified survival not equivalent for {rec.display_label}")
    return out


def _abstention(ns):
    out = []
    for n in ns:
        rs = build_root_system(n)
        for rec in classify(rs):
            f1, f2, f3 = rec.filter_trace
            both = (coset_factorize(rec.element, rs, 1).tilde.is_identity()
                    and coset_factorize(rec.element, rs, 2).tilde.is_identity())
            if both and not rec.element.is_identity():
                out.append(f"n={n}: both filters abstain at non-identity {rec.display_label}")
            if both and not (f2.is_true and f3.is_true):
                out.append(f"n={n}: abstaining filters not TRUE at {rec.display_label}")
    return out


def _parse_atom(text: str):
    for rel in ("==", ">="):
        if rel in text:
            lhs, _, rhs = text.partition(rel)
            return atom(AffineForm.parse(lhs) - AffineForm.parse(rhs), rel)
    raise ValueError(f"cannot parse atom {text!r}")


def survivor_fixture(n: int) -> dict:
    return json.loads(resources.files("ghostclass").joinpath("fixtures", f"survivors_n{n}.json").read_text())


def compare_survivors(rs, data: dict | None = None) -> list[str]:
    """Differences between symbolic classification and a survivor fixture.

    Each fixture entry lists disjuncts (conjunctions of atoms) with the
    offset from the middle weight on that disjunct.  Conditions are compared
    by exact equivalence on the dominance cone, offsets by entailment.
    """
    data = survivor_fixture(rs.n) if data is None else data
    domain = dominance_atoms(rs)
    records = {r.label: r for r in classify(rs) if r.survives}
    want = {e["label"]: e for e in data["survivors"]}
    problems = []
    if set(records) != set(want):
        problems.append(f"survivor labels {sorted(records, key=var_key)} != {sorted(want, key=var_key)}")
    for label in sorted(set(records) & set(want), key=var_key):
        rec, entry = records[label], want[label]
        if rec.degree != entry["degree"]:
            problems.append(f"{label}: degree {rec.degree} != {entry['degree']}")
        terms = [conj(*(_parse_atom(a) for a in t["atoms"])) for t in entry["terms"]]
        if not equivalent(rec.survival, disj(*terms), domain):
            problems.append(f"{label}: condition {rec.survival_text()!r} differs from the fixture")
        for t, cond in zip(entry["terms"], terms):
            premise = domain + sorted(cond.atoms(), key=lambda a: a.render())
            gap = atom(rec.offset - AffineForm.parse(t["offset"]), "==")
            if not implies(premise, gap):
                problems.append(f"{label}: offset {rec.offset.render()} != {t['offset']} on {t['atoms']}")
    return problems


def _survivor_fixtures(ns):
    return [f"survivors n={n}: {p}" for n in FIXTURE_CASES for p in compare_survivors(build_root_system(n))]


def _fixtures(ns):
    out = []
    for n in FIXTURE_CASES:
        out += [f"fixture table_n{n}: {p}" for p in compare_with_fixture(build_root_system(n))]
    return out


FAMILIES: tuple[tuple[str, Callable[[Sequence[int]], list[str]]], ...] = (
    ("positive roots and rho", _root_counts),
    ("parabolic root sets", _parabolic_roots),
    ("Weyl group and W^P0 orders", _group_order),
    ("length function", _lengths),
    ("closed-form Kostant membership", _closed_form),
    ("Kostant set lengths", _kostant_shape),
    ("coset factorisation bijection", _coset_bijection),
    ("dot action composition", _dot_action),
    ("Levi dominance of dotted weights", _levi_dominance),
    ("weight and offset identities", _weights),
    ("Eisenstein threshold", _threshold),
    ("symbolic/concrete agreement", _agreement),
    ("filter abstention", _abstention),
    ("golden table fixtures", _fixtures),
    ("survivor fixtures", _survivor_fixtures),
)


def run_checks(max_n: int = 8, fixture_override: dict[int, str] | None = None) -> list[CheckResult]:
    ns = list(range(3, max_n + 1))
    results = []
    for name, fn in FAMILIES:
        if fn is _fixtures and fixture_override:
            fails = []
            for n in FIXTURE_CASES:
                text = fixture_override.get(n)
                fails += [f"fixture table_n{n}: {p}"
                          for p in compare_with_fixture(build_root_system(n), text)]
        else:
            fails = fn(ns)
        results.append(CheckResult(name, tuple(fails)))
    return results
