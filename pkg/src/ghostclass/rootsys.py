"""Root data of the orthogonal similitude group attached to GO(2, n).

For odd ``n`` the absolute root system is of type ``B_l`` with ``l = (n+1)/2``;
for even ``n`` it is ``D_l`` with ``l = (n+2)/2``.  The restricted root system
has rank two with simple roots ``e1-e2`` and ``e2``; the three standard
parabolics ``P0 = P1 & P2``, ``P1`` and ``P2`` are described here by the sets
of roots in their unipotent radicals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .affine import AffineForm, Number
from .errors import DomainError

PARABOLIC_IDS = (0, 1, 2)


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True)
class SymbolicWeight:
    """``sum(eps[i] * e_{i+1}) + kappa * k`` with exact affine coordinates."""

    eps: tuple[AffineForm, ...]
    kappa: AffineForm = AffineForm()

    def __post_init__(self):
        object.__setattr__(self, "eps", tuple(AffineForm.coerce(x) for x in self.eps))
        object.__setattr__(self, "kappa", AffineForm.coerce(self.kappa))

    @property
    def rank(self) -> int:
        return len(self.eps)

    @classmethod
    def symbolic(cls, l: int) -> SymbolicWeight:
        """The generic highest weight ``a1 e1 + ... + al el + c k``."""
        return cls(tuple(AffineForm.var(f"a{i}") for i in range(1, l + 1)),
                   AffineForm.var("c"))

    @classmethod
    def from_values(cls, eps: Sequence[Number], kappa: Number = 0) -> SymbolicWeight:
        return cls(tuple(AffineForm.constant(x) for x in eps), AffineForm.constant(kappa))

    def _check(self, other: SymbolicWeight):
        if self.rank != other.rank:
            raise DomainError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other: SymbolicWeight) -> SymbolicWeight:
        self._check(other)
        return SymbolicWeight(tuple(x + y for x, y in zip(self.eps, other.eps)),
                              self.kappa + other.kappa)

    def __sub__(self, other: SymbolicWeight) -> SymbolicWeight:
        self._check(other)
        return SymbolicWeight(tuple(x - y for x, y in zip(self.eps, other.eps)),
                              self.kappa - other.kappa)

    def __neg__(self) -> SymbolicWeight:
        return SymbolicWeight(tuple(-x for x in self.eps), -self.kappa)

    def substitute(self, mapping: Mapping[str, AffineForm | Number]) -> SymbolicWeight:
        return SymbolicWeight(tuple(x.substitute(mapping) for x in self.eps),
                              self.kappa.substitute(mapping))

    def evaluate(self, assignment: Mapping[str, Number]) -> tuple[tuple[Fraction, ...], Fraction]:
        return (tuple(x.evaluate(assignment) for x in self.eps),
                self.kappa.evaluate(assignment))

    def constant_eps(self) -> tuple[Fraction, ...]:
        if any(not x.is_constant() for x in self.eps):
            raise DomainError("weight has symbolic coordinates")
        return tuple(x.const for x in self.eps)

    def render(self) -> str:
        return "(" + ", ".join(x.render() for x in self.eps) + "; " + self.kappa.render() + ")"


# ---------------------------------------------------------------------------
# roots


@dataclass(frozen=True, order=False)
class Root:
    """A root of ``B_l`` or ``D_l`` in the epsilon basis."""

    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(x) for x in self.coords)
        object.__setattr__(self, "coords", coords)
        if any(x not in (-1, 0, 1) for x in coords):
            raise DomainError(f"root entries must lie in {{-1,0,1}}: {coords}")
        if sum(1 for x in coords if x) not in (1, 2):
            raise DomainError(f"root must have one or two nonzero entries: {coords}")

    @classmethod
    def from_terms(cls, l: int, *terms: tuple[int, int]) -> Root:
        """``Root.from_terms(3, (1, 1), (2, -1))`` is ``e1-e2``; indices are 1-based."""
        v = [0] * l
        for idx, sign in terms:
            v[idx - 1] = sign
        return cls(tuple(v))

    @property
    def support(self) -> tuple[int, ...]:
        """0-based indices of nonzero entries, ascending."""
        return tuple(i for i, x in enumerate(self.coords) if x)

    @property
    def is_short(self) -> bool:
        return len(self.support) == 1

    def is_positive(self) -> bool:
        return self.coords[self.support[0]] > 0

    def __neg__(self) -> Root:
        return Root(tuple(-x for x in self.coords))

    def sort_key(self) -> tuple:
        sup = self.support
        l = len(self.coords)
        if len(sup) == 1:
            return (sup[0], l + 1, 0)
        return (sup[0], sup[1], self.coords[sup[1]])

    def render(self) -> str:
        out = ""
        for i in self.support:
            out += ("-" if self.coords[i] < 0 else "+") + f"e{i + 1}"
        return out.lstrip("+")

    def __str__(self):
        return self.render()

    @classmethod
    def parse(cls, text: str, l: int) -> Root:
        form = AffineForm.parse(text)
        if form.const != 0:
            raise DomainError(f"not a root: {text!r}")
        v = [0] * l
        for name, k in form.coeffs:
            if not name.startswith("e"):
                raise DomainError(f"not a root: {text!r}")
            v[int(name[1:]) - 1] = k
        return cls(tuple(v))


def half_sum(roots, l: int) -> tuple[Fraction, ...]:
    """Coordinate-wise half-sum of a collection of roots."""
    total = [0] * l
    for r in roots:
        for i, x in enumerate(r.coords):
            total[i] += x
    return tuple(Fraction(t, 2) for t in total)


# ---------------------------------------------------------------------------
# root system


@dataclass(frozen=True)
class ParabolicDatum:
    id: int
    delta: tuple[Root, ...]
    levi_simple_roots: tuple[Root, ...]

    @property
    def name(self) -> str:
        return f"P{self.id}"


@dataclass(frozen=True)
class RootSystemData:
    n: int
    lie_type: str
    l: int
    positive_roots: tuple[Root, ...]
    simple_roots: tuple[Root, ...]
    rho: SymbolicWeight
    fundamental_weights: tuple[SymbolicWeight, ...]

    @property
    def rho_values(self) -> tuple[Fraction, ...]:
        return self.rho.constant_eps()

    def parabolic(self, i: int) -> ParabolicDatum:
        delta = unipotent_radical_roots(self, i)
        dset = set(delta)
        levi = tuple(r for r in self.simple_roots if r not in dset)
        return ParabolicDatum(i, delta, levi)

    def __hash__(self):
        return hash((self.n, self.lie_type))

    def __eq__(self, other):
        return isinstance(other, RootSystemData) and (self.n, self.lie_type) == (other.n, other.lie_type)


def rank_and_type(n: int) -> tuple[int, str]:
    if not isinstance(n, int) or n < 3:
        raise DomainError(f"n must be an integer >= 3, got {n!r}")
    if n % 2:
        return (n + 1) // 2, "B"
    return (n + 2) // 2, "D"


_CACHE: dict[int, RootSystemData] = {}


def build_root_system(n: int) -> RootSystemData:
    """Absolute root datum for GO(2, n); cached, values are immutable."""
    l, lie_type = rank_and_type(n)
    if n in _CACHE:
        return _CACHE[n]
    roots = []
    for i in range(1, l + 1):
        for j in range(i + 1, l + 1):
            roots.append(Root.from_terms(l, (i, 1), (j, -1)))
            roots.append(Root.from_terms(l, (i, 1), (j, 1)))
        if lie_type == "B":
            roots.append(Root.from_terms(l, (i, 1)))
    roots.sort(key=Root.sort_key)

    simple = [Root.from_terms(l, (i, 1), (i + 1, -1)) for i in range(1, l)]
    if lie_type == "B":
        simple.append(Root.from_terms(l, (l, 1)))
    else:
        simple.append(Root.from_terms(l, (l - 1, 1), (l, 1)))

    rho = SymbolicWeight.from_values(half_sum(roots, l))

    half = Fraction(1, 2)
    fund = []
    for k in range(1, l + 1):
        v = [Fraction(0)] * l
        if lie_type == "B":
            for i in range(k):
                v[i] = Fraction(1) if k < l else half
        else:
            if k < l - 1:
                for i in range(k):
                    v[i] = Fraction(1)
            else:
                for i in range(l - 1):
                    v[i] = half
                v[l - 1] = -half if k == l - 1 else half
        fund.append(SymbolicWeight.from_values(v))

    data = RootSystemData(n, lie_type, l, tuple(roots), tuple(simple), rho, tuple(fund))
    _CACHE[n] = data
    return data


def unipotent_radical_roots(rs: RootSystemData | int, i: int) -> tuple[Root, ...]:
    """Roots of the unipotent radical of the standard parabolic ``P_i``.

    ``P0``: every positive root whose leading index is 1 or 2.  ``P1``: leading
    index 1.  ``P2``: ``P0`` minus ``e1-e2``.  For ``l = 2`` the ``P0`` set is
    all of the positive roots.
    """
    if isinstance(rs, int):
        rs = build_root_system(rs)
    if i not in PARABOLIC_IDS:
        raise DomainError(f"parabolic id must be 0, 1 or 2, got {i!r}")
    if i == 1:
        return tuple(r for r in rs.positive_roots if r.support[0] == 0)
    delta0 = tuple(r for r in rs.positive_roots if r.support[0] <= 1)
    if i == 0:
        return delta0
    e12 = Root.from_terms(rs.l, (1, 1), (2, -1))
    return tuple(r for r in delta0 if r != e12)


# ---------------------------------------------------------------------------
# highest weights


@dataclass(frozen=True)
class HighestWeightVerdict:
    valid: bool
    violation: str | None = None

    def __bool__(self):
        return self.valid


def validate_highest_weight(coeffs: Sequence[int], c: int, n: int) -> HighestWeightVerdict:
    """Check that ``a1 e1 + ... + al el + c k`` is a highest weight for G_n.

    Type B needs ``a1 >= ... >= al >= 0``; type D needs
    ``a1 >= ... >= a_{l-1} >= |a_l|``.  Both need ``c = a1 + ... + al (mod 2)``.
    """
    l, lie_type = rank_and_type(n)
    a = list(coeffs)
    if len(a) != l:
        raise DomainError(f"expected {l} coefficients for n={n}, got {len(a)}")
    for k in range(l - 1):
        if a[k] < a[k + 1]:
            return HighestWeightVerdict(False, f"dominance: a{k + 1} >= a{k + 2} fails")
    if lie_type == "B" and a[-1] < 0:
        return HighestWeightVerdict(False, f"dominance: a{l} >= 0 fails")
    if lie_type == "D" and a[l - 2] < -a[l - 1]:
        return HighestWeightVerdict(False, f"dominance: a{l - 1} >= -a{l} fails")
    if (c - sum(a)) % 2:
        return HighestWeightVerdict(False, f"parity: c = {c} is not congruent to a1+...+a{l} = {sum(a)} mod 2")
    return HighestWeightVerdict(True)


# ---------------------------------------------------------------------------
# form conjugation


def form_i2n(n: int) -> list[list[Fraction]]:
    """``Id_2 x -Id_n`` as an exact (n+2)x(n+2) matrix."""
    size = n + 2
    return [[Fraction(1 if i < 2 else -1) if i == j else Fraction(0) for j in range(size)]
            for i in range(size)]


def form_jn(n: int) -> list[list[Fraction]]:
    """Antidiagonal 2x2 corner blocks around a middle ``Id_{n-2}``."""
    size = n + 2
    m = [[Fraction(0)] * size for _ in range(size)]
    m[0][size - 1] = m[size - 1][0] = Fraction(1)
    m[1][size - 2] = m[size - 2][1] = Fraction(1)
    for k in range(2, size - 2):
        m[k][k] = Fraction(1)
    return m


def conjugation_matrix(n: int) -> list[list[Fraction]]:
    """The block matrix identifying GO(2, n) with G_n, entries as printed."""
    size = n + 2
    m = [[Fraction(0)] * size for _ in range(size)]
    m[0][0], m[0][size - 1] = Fraction(1), Fraction(-1)
    m[1][1], m[1][size - 2] = Fraction(1), Fraction(-1)
    for k in range(2, size - 2):
        m[k][k] = Fraction(1)
    m[size - 2][1], m[size - 2][size - 2] = Fraction(1), Fraction(1)
    m[size - 1][0], m[size - 1][size - 1] = Fraction(1), Fraction(1)
    return m


def _matmul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def _transpose(a):
    return [list(row) for row in zip(*a)]


def proportionality_factor(a, b) -> Fraction | None:
    """The scalar ``mu`` with ``a == mu * b``, or ``None`` if there is none."""
    mu = None
    for row_a, row_b in zip(a, b):
        for x, y in zip(row_a, row_b):
            if y == 0:
                if x != 0:
                    return None
                continue
            ratio = x / y
            if mu is None:
                mu = ratio
            elif ratio != mu:
                return None
    return mu


@dataclass(frozen=True)
class ConjugationCheck:
    n: int
    factor: Fraction | None
    gram: tuple[tuple[Fraction, ...], ...]

    @property
    def ok(self) -> bool:
        return self.factor is not None


def verify_form_conjugation(n: int, matrix=None) -> ConjugationCheck:
    """Compute ``X^t I_{2,n} X`` and compare it with ``J_n``.

    ``matrix`` overrides ``X`` (default: :func:`conjugation_matrix`).  The
    returned check carries the Gram matrix so a failure can be inspected.
    """
    rank_and_type(n)
    x = conjugation_matrix(n) if matrix is None else [[Fraction(v) for v in row] for row in matrix]
    gram = _matmul(_matmul(_transpose(x), form_i2n(n)), x)
    return ConjugationCheck(n, proportionality_factor(gram, form_jn(n)),
                            tuple(tuple(row) for row in gram))
