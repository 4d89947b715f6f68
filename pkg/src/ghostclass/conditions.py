"""Boolean conditions over linear atoms in integer variables, with a small exact solver.

Atoms have the shape ``lhs >= 0`` or ``lhs == 0`` where ``lhs`` involves at most
two variables with coefficients ``+-1`` (unit two-variable-per-inequality, or
"octagonal", constraints).  Conjunctions of such atoms are decided over the
integers by tight closure (shortest paths on the doubled constraint graph,
then unary tightening), which is exact for this class.  Arbitrary formulas
are handled through their disjunctive normal form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .affine import AffineForm, Number, var_key
from .errors import DomainError

INF = math.inf


# ---------------------------------------------------------------------------
# atoms


@dataclass(frozen=True)
class Atom:
    """``lhs >= 0`` or ``lhs == 0``; build through :func:`atom` for normalisation."""

    lhs: AffineForm
    rel: str

    def evaluate(self, assignment: Mapping[str, Number]) -> bool:
        v = self.lhs.evaluate(assignment)
        return v >= 0 if self.rel == ">=" else v == 0

    def negated(self) -> list[Atom]:
        """Atoms whose disjunction is the negation (integer semantics)."""
        if self.rel == ">=":
            return [Atom(-self.lhs - 1, ">=")]
        return [Atom(self.lhs - 1, ">="), Atom(-self.lhs - 1, ">=")]

    def render(self) -> str:
        # P - N + k >= 0 is written P >= N - k, or N <= k when P is empty
        pos = AffineForm(Fraction(0), tuple(t for t in self.lhs.coeffs if t[1] > 0))
        neg = AffineForm(Fraction(0), tuple((v, -k) for v, k in self.lhs.coeffs if k < 0))
        k = AffineForm.constant(self.lhs.const)
        eq = self.rel == "=="
        if pos.is_constant():
            return f"{neg.render()}{'=' if eq else '<='}{k.render()}"
        return f"{pos.render()}{'=' if eq else '>='}{(neg - k).render()}"

    def __str__(self):
        return self.render()


def atom(lhs: AffineForm | Number, rel: str) -> Condition:
    """``lhs <rel> 0`` for ``rel`` in ``== >= <= > <``, normalised over the integers.

    Coefficients are divided by their gcd and the constant is rounded
    accordingly; constant atoms collapse to ``TRUE``/``FALSE``.
    """
    lhs = AffineForm.coerce(lhs)
    if rel in ("<=", "<"):
        lhs, rel = -lhs, {"<=": ">=", "<": ">"}[rel]
    if rel not in ("==", ">=", ">"):
        raise DomainError(f"unknown relation {rel!r}")
    if lhs.is_constant():
        v = lhs.const
        ok = {"==": v == 0, ">=": v >= 0, ">": v > 0}[rel]
        return TRUE if ok else FALSE
    g = math.gcd(*(abs(k) for _, k in lhs.coeffs))
    scaled = AffineForm(Fraction(0), tuple((v, k // g) for v, k in lhs.coeffs))
    r = lhs.const / g
    if rel == "==":
        if (-r).denominator != 1:
            return FALSE
        form = scaled + r
        if form.coeffs[0][1] < 0:
            form = -form
        new = Atom(form, "==")
    elif rel == ">=":
        new = Atom(scaled - math.ceil(-r), ">=")
    else:
        new = Atom(scaled - (math.floor(-r) + 1), ">=")
    if len(new.lhs.coeffs) > 2 or any(abs(k) != 1 for _, k in new.lhs.coeffs):
        raise DomainError(f"atom {new.render()} is outside the two-variable unit class")
    return Condition("atom", (new,))


# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Condition:
    """Boolean formula: ``true``, ``false``, ``atom``, ``and``, ``or`` or ``not``."""

    op: str
    args: tuple = ()

    def evaluate(self, assignment: Mapping[str, Number]) -> bool:
        op = self.op
        if op == "true":
            return True
        if op == "false":
            return False
        if op == "atom":
            return self.args[0].evaluate(assignment)
        if op == "and":
            return all(a.evaluate(assignment) for a in self.args)
        if op == "or":
            return any(a.evaluate(assignment) for a in self.args)
        return not self.args[0].evaluate(assignment)

    @property
    def is_true(self) -> bool:
        return self.op == "true"

    @property
    def is_false(self) -> bool:
        return self.op == "false"

    def atoms(self) -> set[Atom]:
        if self.op == "atom":
            return {self.args[0]}
        out = set()
        for a in self.args:
            out |= a.atoms()
        return out

    def variables(self) -> set[str]:
        return {v for a in self.atoms() for v in a.lhs.variables}

    def render(self) -> str:
        op = self.op
        if op in ("true", "false"):
            return op.upper()
        if op == "atom":
            return self.args[0].render()
        if op == "not":
            return f"not ({self.args[0].render()})"
        parts = [a.render() for a in self.args]
        if op == "and":
            return " and ".join(f"({p})" if a.op == "or" else p for p, a in zip(parts, self.args))
        return " or ".join(f"({p})" if a.op == "and" and len(a.args) > 1 else p
                           for p, a in zip(parts, self.args))

    def __str__(self):
        return self.render()

    def __and__(self, other):
        return conj(self, other)

    def __or__(self, other):
        return disj(self, other)

    def __invert__(self):
        return neg(self)


TRUE = Condition("true")
FALSE = Condition("false")


def conj(*conds: Condition) -> Condition:
    flat = []
    for c in conds:
        if c.is_false:
            return FALSE
        if c.is_true:
            continue
        flat.extend(c.args if c.op == "and" else (c,))
    uniq = list(dict.fromkeys(flat))
    if not uniq:
        return TRUE
    return uniq[0] if len(uniq) == 1 else Condition("and", tuple(uniq))


def disj(*conds: Condition) -> Condition:
    flat = []
    for c in conds:
        if c.is_true:
            return TRUE
        if c.is_false:
            continue
        flat.extend(c.args if c.op == "or" else (c,))
    uniq = list(dict.fromkeys(flat))
    if not uniq:
        return FALSE
    return uniq[0] if len(uniq) == 1 else Condition("or", tuple(uniq))


def neg(c: Condition) -> Condition:
    if c.is_true:
        return FALSE
    if c.is_false:
        return TRUE
    if c.op == "not":
        return c.args[0]
    return Condition("not", (c,))


def from_atoms(atoms: Iterable[Atom]) -> Condition:
    return conj(*(Condition("atom", (a,)) for a in atoms))


def to_dnf(c: Condition, negate: bool = False) -> list[frozenset[Atom]]:
    """Disjunctive normal form as a list of atom conjunctions (negation pushed in)."""
    op = c.op
    if op == "true" or op == "false":
        return [frozenset()] if (op == "true") != negate else []
    if op == "atom":
        a = c.args[0]
        return [frozenset((n,)) for n in a.negated()] if negate else [frozenset((a,))]
    if op == "not":
        return to_dnf(c.args[0], not negate)
    as_and = (op == "and") != negate
    parts = [to_dnf(a, negate) for a in c.args]
    if not as_and:
        return [t for p in parts for t in p]
    terms = [frozenset()]
    for p in parts:
        terms = [t | u for t in terms for u in p]
    return list(dict.fromkeys(terms))


# ---------------------------------------------------------------------------
# integer octagon closure


class Octagon:
    """Tight closure of a conjunction of unit two-variable atoms over the integers."""

    def __init__(self, atoms: Iterable[Atom], variables: Sequence[str] = ()):
        atoms = list(atoms)
        self._atoms = atoms
        names = set(variables)
        for a in atoms:
            names.update(a.lhs.variables)
        self.variables = tuple(sorted(names, key=var_key))
        self._pos = {v: k for k, v in enumerate(self.variables)}
        size = 2 * len(self.variables)
        d = [[INF] * size for _ in range(size)]
        for u in range(size):
            d[u][u] = 0
        self._d = d
        for a in atoms:
            self._add(a.lhs, a.rel)
        self.feasible = self._close()

    def _lit(self, name: str, sign: int) -> int:
        return 2 * self._pos[name] + (0 if sign > 0 else 1)

    def _edge(self, v: int, u: int, w):
        # val(u) - val(v) <= w, together with its mirror
        d = self._d
        if w < d[v][u]:
            d[v][u] = w
        if w < d[u ^ 1][v ^ 1]:
            d[u ^ 1][v ^ 1] = w

    def _add(self, lhs: AffineForm, rel: str):
        # lhs >= 0  <=>  sum(-k x) <= const
        terms = [(v, -k) for v, k in lhs.coeffs]
        bound = lhs.const
        if bound.denominator != 1:
            raise DomainError(f"non-integral constant in octagonal atom {lhs.render()}")
        bound = int(bound)
        self._add_le(terms, bound)
        if rel == "==":
            self._add_le([(v, -k) for v, k in terms], -bound)

    def _add_le(self, terms, bound: int):
        if len(terms) == 1:
            (v, a), = terms
            u = self._lit(v, a)
            self._edge(u ^ 1, u, 2 * bound)
        else:
            (p, a), (q, b) = terms
            self._edge(self._lit(q, -b), self._lit(p, a), bound)

    def _close(self) -> bool:
        d = self._d
        size = len(d)
        for k in range(size):
            dk = d[k]
            for i in range(size):
                dik = d[i][k]
                if dik == INF:
                    continue
                di = d[i]
                for j in range(size):
                    alt = dik + dk[j]
                    if alt < di[j]:
                        di[j] = alt
        if any(d[u][u] < 0 for u in range(size)):
            return False
        for u in range(size):
            if d[u][u ^ 1] != INF:
                d[u][u ^ 1] = 2 * math.floor(d[u][u ^ 1] / 2)
        for u in range(0, size, 2):
            if d[u][u + 1] + d[u + 1][u] < 0:
                return False
        for i in range(size):
            for j in range(size):
                alt = (d[i][i ^ 1] + d[j ^ 1][j]) / 2
                if alt < d[i][j]:
                    d[i][j] = alt
        for i in range(size):
            for j in range(size):
                if d[i][j] != INF:
                    d[i][j] = int(d[i][j])
        return all(d[u][u] >= 0 for u in range(size))

    def _get(self, v: int, u: int):
        return self._d[v][u]

    def upper(self, x: str):
        """Largest integer value of ``x`` (``inf`` if unbounded)."""
        w = self._get(self._lit(x, -1), self._lit(x, 1))
        return w if w == INF else w // 2

    def lower(self, x: str):
        w = self._get(self._lit(x, 1), self._lit(x, -1))
        return -INF if w == INF else -(w // 2)

    def diff_upper(self, x: str, y: str):
        """Largest value of ``x - y``."""
        return self._get(self._lit(y, 1), self._lit(x, 1))

    def sum_upper(self, x: str, y: str):
        return self._get(self._lit(y, -1), self._lit(x, 1))

    def sum_lower(self, x: str, y: str):
        w = self._get(self._lit(y, 1), self._lit(x, -1))
        return -INF if w == INF else -w

    def entails(self, a: Atom) -> bool:
        """Whether every integer point of this octagon satisfies ``a``."""
        if not self.feasible:
            return True
        return not any(satisfiable(self._atoms + [n]) for n in a.negated())


def satisfiable(atoms: Iterable[Atom]) -> bool:
    return Octagon(atoms).feasible


def implies(premise: Iterable[Atom], conclusion: Condition) -> bool:
    """Whether ``premise`` (a conjunction) entails ``conclusion`` over the integers."""
    premise = list(premise)
    return not any(satisfiable(premise + list(t)) for t in to_dnf(conclusion, negate=True))


def is_satisfiable(c: Condition, domain: Iterable[Atom] = ()) -> bool:
    domain = list(domain)
    return any(satisfiable(domain + list(t)) for t in to_dnf(c))


def equivalent(c1: Condition, c2: Condition, domain: Iterable[Atom] = ()) -> bool:
    """Exact equivalence of two formulas on the integer points of ``domain``."""
    domain = list(domain)
    return not is_satisfiable(conj(c1, neg(c2)), domain) and not is_satisfiable(conj(c2, neg(c1)), domain)


# ---------------------------------------------------------------------------
# simplification and description


@dataclass(frozen=True)
class TermDescription:
    """One disjunct of a simplified condition.

    ``substitution`` maps each variable pinned by the term to a constant or to
    ``+-rep + k`` for the class representative ``rep``.
    """

    text: str
    atoms: tuple[Atom, ...]
    substitution: tuple[tuple[str, AffineForm], ...]

    def substitute(self, form: AffineForm) -> AffineForm:
        return form.substitute(dict(self.substitution))


@dataclass(frozen=True)
class Simplified:
    condition: Condition
    terms: tuple[TermDescription, ...]

    @property
    def text(self) -> str:
        if not self.terms:
            return "never"
        if len(self.terms) == 1 and not self.terms[0].atoms:
            return "always"
        return " or ".join(t.text for t in self.terms)


def _fmt_range(lo, hi, name: str) -> str | None:
    if lo == -INF and hi == INF:
        return None
    if lo != -INF and hi != INF:
        if lo == hi:
            return f"={lo}"
        if hi - lo <= 3:
            return " in {" + ",".join(str(v) for v in range(lo, hi + 1)) + "}"
        return f" in [{lo},{hi}]"
    return f"<={hi}" if lo == -INF else f">={lo}"


def _describe(term: frozenset[Atom], domain: list[Atom]) -> TermDescription:
    tight = Octagon(domain + list(term))
    names = [v for v in tight.variables if any(v in a.lhs.variables for a in term)
             or any(v in a.lhs.variables for a in domain)]
    # classes of variables tied by x = s*y + k, representative smallest by var_key
    rel: dict[str, tuple[str, int, int]] = {v: (v, 1, 0) for v in names}

    def find(v):
        r, s, k = rel[v]
        if r == v:
            return v, 1, 0
        rr, s2, k2 = find(r)
        rel[v] = (rr, s * s2, s * k2 + k)
        return rel[v]

    for i, x in enumerate(names):
        for y in names[i + 1:]:
            hi, lo = tight.diff_upper(x, y), -tight.diff_upper(y, x)
            if hi != INF and hi == lo:
                tie = (1, hi)  # x = y + hi
            else:
                hi, lo = tight.sum_upper(x, y), tight.sum_lower(x, y)
                if hi == INF or hi != lo:
                    continue
                tie = (-1, hi)  # x = -y + hi
            rx, sx, kx = find(x)
            ry, sy, ky = find(y)
            if rx == ry:
                continue
            # x = sx*rx + kx,  y = sy*ry + ky,  x = s*y + k
            s, k = tie
            # rx = sx*(s*(sy*ry + ky) + k - kx)
            new = (ry, sx * s * sy, sx * (s * ky + k - kx))
            if var_key(rx) < var_key(ry):
                # attach ry under rx instead
                new_s = new[1]
                new_k = new[2]
                rel[ry] = (rx, new_s, -new_s * new_k)
            else:
                rel[rx] = new

    classes: dict[str, list[tuple[str, int, int]]] = {}
    for v in names:
        r, s, k = find(v)
        classes.setdefault(r, []).append((v, s, k))

    equalities: list[Atom] = []
    for rep, members in classes.items():
        for v, s, k in members:
            if v != rep:
                equalities.append(Atom(AffineForm.var(v) - AffineForm.var(rep, s) - k, "=="))
    base = Octagon(domain + equalities, names)

    pieces: list[str] = []
    desc_atoms: list[Atom] = list(equalities)
    subst: list[tuple[str, AffineForm]] = []
    for rep in sorted(classes, key=var_key):
        members = sorted(classes[rep], key=lambda t: var_key(t[0]))
        lo, hi = tight.lower(rep), tight.upper(rep)
        fixed = lo == hi and lo != INF
        if fixed:
            for v, s, k in members:
                subst.append((v, AffineForm.constant(s * lo + k)))
            if len(members) == 1 and (base.lower(rep), base.upper(rep)) == (lo, hi):
                continue
            by_value: dict[int, list[str]] = {}
            for v, s, k in members:
                by_value.setdefault(s * lo + k, []).append(v)
            pieces.append(", ".join("=".join(vs) + f"={val}" for val, vs in by_value.items()))
            desc_atoms.append(Atom(AffineForm.var(rep) - lo, "=="))
            continue
        plain = [v for v, s, k in members if (s, k) == (1, 0)]
        text = "=".join(plain)
        extra = []
        for v, s, k in members:
            if (s, k) != (1, 0):
                subst.append((v, AffineForm.var(rep, s) + k))
                rhs = AffineForm.var(v, s) - s * k
                extra.append(f"{rep}={rhs.render()}")
        tighter_lo = lo if lo != base.lower(rep) else -INF
        tighter_hi = hi if hi != base.upper(rep) else INF
        # once one side is informative, show the full range when it is finite
        shown_lo = lo if tighter_lo != -INF or tighter_hi != INF else -INF
        shown_hi = hi if tighter_lo != -INF or tighter_hi != INF else INF
        rng = _fmt_range(shown_lo, shown_hi, rep)
        if rng is not None:
            if tighter_lo != -INF:
                desc_atoms.append(Atom(AffineForm.var(rep) - tighter_lo, ">="))
            if tighter_hi != INF:
                desc_atoms.append(Atom(-AffineForm.var(rep) + tighter_hi, ">="))
        if len(members) == 1 and rng is None:
            continue
        if extra and len(plain) == 1:
            head = extra[0] + (rng or "")
            pieces.append(", ".join([head] + extra[1:]))
        else:
            pieces.append(", ".join([text + (rng or "")] + extra))

    described = Octagon(domain + desc_atoms)
    leftover = [a for a in sorted(term, key=lambda a: a.render()) if not described.entails(a)]
    if leftover:
        desc_atoms.extend(leftover)
        pieces.extend(a.render() for a in leftover)
    return TermDescription(", ".join(pieces) if pieces else "always",
                           tuple(desc_atoms), tuple(subst))


def simplify(c: Condition, domain: Iterable[Atom] = ()) -> Simplified:
    """Sound simplification of ``c`` on the integer points of ``domain``.

    Infeasible and subsumed disjuncts are dropped; each surviving disjunct is
    re-described through its tight closure (variable classes, pinned values
    and bounds beyond those implied by ``domain``).  The returned condition is
    equivalent to ``c`` on ``domain``.
    """
    domain = list(domain)
    terms = [t for t in to_dnf(c) if satisfiable(domain + list(t))]
    kept: list[frozenset[Atom]] = []
    for t in terms:
        if any(implies(domain + list(t), from_atoms(k)) for k in kept):
            continue
        kept = [k for k in kept if not implies(domain + list(k), from_atoms(t))]
        kept.append(t)
    descs = [_describe(t, domain) for t in kept]
    if any(not d.atoms for d in descs):
        return Simplified(TRUE, (TermDescription("always", (), ()),))
    cond = disj(*(from_atoms(d.atoms) for d in descs))
    return Simplified(cond, tuple(descs))
