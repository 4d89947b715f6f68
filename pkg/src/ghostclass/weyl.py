"""Weyl groups of types B_l and D_l as signed permutations.

``WeylElement(sigma, signs)`` is the element taking ``e_i`` to
``f(sigma(i)) e_{sigma(i)}``: the sign vector is indexed by the *target*
label.  Composition puts the right factor first, so ``compose(u, v)`` acts
as ``u(v(-))``.

Enumeration order (the "table" profile) is sign pattern outer, permutation
inner.  Permutations are ordered by number of moved points, then by their
canonical cycle tuple; for ``l = 3`` that is ``e, (1 2), (1 3), (2 3),
(1 2 3), (3 2 1)``.  Sign patterns are ordered by binary counting over the
generating flips: single flips ``{k}`` for type B, adjacent pair flips
``{k, k+1}`` for type D.  For ``l = 3`` this gives ``{}, {1}, {2}, {1,2}, ...``
(B) and ``{}, {1,2}, {2,3}, {1,3}`` (D).
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import DomainError
from .rootsys import Root, RootSystemData, SymbolicWeight

PROFILES = ("table", "lex")


@dataclass(frozen=True)
class WeylElement:
    """Signed permutation; ``sigma`` and ``signs`` are 1-based in meaning.

    ``sigma[i-1] = sigma(i)`` and ``signs[m-1] = f(m)``.
    """

    sigma: tuple[int, ...]
    signs: tuple[int, ...]
    lie_type: str = "B"

    def __post_init__(self):
        sigma = tuple(int(x) for x in self.sigma)
        signs = tuple(int(x) for x in self.signs)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "signs", signs)
        l = len(sigma)
        if sorted(sigma) != list(range(1, l + 1)):
            raise DomainError(f"sigma is not a permutation of 1..{l}: {sigma}")
        if len(signs) != l or any(s not in (1, -1) for s in signs):
            raise DomainError(f"signs must be {l} entries in {{+1,-1}}: {signs}")
        if self.lie_type not in ("B", "D"):
            raise DomainError(f"lie_type must be 'B' or 'D', got {self.lie_type!r}")
        if self.lie_type == "D" and signs.count(-1) % 2:
            raise DomainError("type D elements need an even number of sign changes")

    @property
    def rank(self) -> int:
        return len(self.sigma)

    @classmethod
    def identity(cls, l: int, lie_type: str = "B") -> WeylElement:
        return cls(tuple(range(1, l + 1)), (1,) * l, lie_type)

    @classmethod
    def from_parts(cls, l: int, cycles: str = "e", flips=(), lie_type: str = "B") -> WeylElement:
        """Build from cycle notation and the set ``f^{-1}(-1)``.

        >>> WeylElement.from_parts(3, "(1 2 3)").sigma
        (2, 3, 1)
        """
        sigma = parse_cycles(cycles, l)
        flips = set(flips)
        return cls(sigma, tuple(-1 if m in flips else 1 for m in range(1, l + 1)), lie_type)

    @property
    def flips(self) -> tuple[int, ...]:
        """``f^{-1}(-1)`` as a sorted tuple of 1-based labels."""
        return tuple(m for m, s in enumerate(self.signs, 1) if s < 0)

    @property
    def sigma_inverse(self) -> tuple[int, ...]:
        inv = [0] * self.rank
        for i, s in enumerate(self.sigma, 1):
            inv[s - 1] = i
        return tuple(inv)

    def is_identity(self) -> bool:
        return self.sigma == tuple(range(1, self.rank + 1)) and all(s == 1 for s in self.signs)

    def inverse(self) -> WeylElement:
        # w^{-1}(e_m) = f(m) e_{sigma^{-1}(m)}, so f'(j) = f(sigma(j))
        return WeylElement(self.sigma_inverse,
                           tuple(self.signs[s - 1] for s in self.sigma), self.lie_type)

    def apply_to_root(self, root: Root) -> Root:
        out = [0] * self.rank
        for i, x in enumerate(root.coords):
            if x:
                t = self.sigma[i] - 1
                out[t] = self.signs[t] * x
        return Root(tuple(out))

    def render(self) -> str:
        flips = ",".join(str(m) for m in self.flips)
        return f"sigma={render_cycles(self.sigma)}, f={{{flips}}}"

    def __str__(self):
        return self.render()


def _check_pair(w1: WeylElement, w2: WeylElement):
    if w1.rank != w2.rank or w1.lie_type != w2.lie_type:
        raise DomainError(f"incompatible Weyl elements: {w1.lie_type}{w1.rank} vs {w2.lie_type}{w2.rank}")


def compose(w1: WeylElement, w2: WeylElement) -> WeylElement:
    """The product ``w1 w2`` (``w2`` acts first)."""
    _check_pair(w1, w2)
    sigma = tuple(w1.sigma[s - 1] for s in w2.sigma)
    inv1 = w1.sigma_inverse
    # f(m) = f1(m) * f2(sigma1^{-1}(m))
    signs = tuple(w1.signs[m] * w2.signs[inv1[m] - 1] for m in range(w1.rank))
    return WeylElement(sigma, signs, w1.lie_type)


def act_on_weight(w: WeylElement, v: SymbolicWeight) -> SymbolicWeight:
    """Apply ``w`` to the epsilon part of ``v``; the kappa coordinate is fixed."""
    if v.rank != w.rank:
        raise DomainError(f"rank mismatch: element of rank {w.rank}, weight of rank {v.rank}")
    out = [None] * w.rank
    for i, x in enumerate(v.eps):
        t = w.sigma[i] - 1
        out[t] = x if w.signs[t] == 1 else -x
    return SymbolicWeight(tuple(out), v.kappa)


def _check_rs(w: WeylElement, rs: RootSystemData):
    if w.rank != rs.l or w.lie_type != rs.lie_type:
        raise DomainError(f"element of type {w.lie_type}{w.rank} used with {rs.lie_type}{rs.l}")


def inversion_set(w: WeylElement, rs: RootSystemData) -> tuple[Root, ...]:
    """``w(Phi^-) & Phi^+``: positive roots sent to negative roots by ``w^{-1}``."""
    _check_rs(w, rs)
    winv = w.inverse()
    return tuple(r for r in rs.positive_roots if not winv.apply_to_root(r).is_positive())


def length(w: WeylElement, rs: RootSystemData) -> int:
    return len(inversion_set(w, rs))


# ---------------------------------------------------------------------------
# cycle notation


def _cycles(sigma: tuple[int, ...]) -> list[tuple[int, ...]]:
    seen = set()
    out = []
    for start in range(1, len(sigma) + 1):
        if start in seen or sigma[start - 1] == start:
            continue
        cyc = [start]
        seen.add(start)
        nxt = sigma[start - 1]
        while nxt != start:
            cyc.append(nxt)
            seen.add(nxt)
            nxt = sigma[nxt - 1]
        out.append(tuple(cyc))
    return out


def render_cycles(sigma: tuple[int, ...]) -> str:
    """Cycle notation; ``e`` for the identity.

    A cycle is written from its smallest entry unless it reads strictly
    decreasing from its largest, so ``1->3->2->1`` renders as ``(3 2 1)``.
    """
    parts = []
    for cyc in _cycles(tuple(sigma)):
        if list(cyc) != sorted(cyc):
            top = cyc.index(max(cyc))
            rot = cyc[top:] + cyc[:top]
            if list(rot) == sorted(rot, reverse=True):
                cyc = rot
        parts.append("(" + " ".join(str(x) for x in cyc) + ")")
    return "".join(parts) or "e"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, l: int) -> tuple[int, ...]:
    """Parse ``e`` or a product of disjoint cycles; ``(1 2 3)`` is 1->2->3->1."""
    text = text.strip()
    sigma = list(range(1, l + 1))
    if text in ("e", "", "()"):
        return tuple(sigma)
    if _CYCLE_RE.sub("", text).strip():
        raise DomainError(f"cannot parse cycle notation {text!r}")
    used = set()
    for body in _CYCLE_RE.findall(text):
        items = [int(tok) for tok in re.split(r"[\s,]+", body.strip()) if tok]
        if any(not 1 <= x <= l for x in items) or used & set(items) or len(set(items)) != len(items):
            raise DomainError(f"invalid cycle ({body}) for rank {l}")
        used |= set(items)
        for a, b in zip(items, items[1:] + items[:1]):
            sigma[a - 1] = b
    return tuple(sigma)


# ---------------------------------------------------------------------------
# enumeration


def _sigma_key(sigma: tuple[int, ...]):
    moved = sum(1 for i, s in enumerate(sigma, 1) if i != s)
    return (moved, tuple(_cycles(sigma)))


def _sign_patterns(l: int, lie_type: str, profile: str) -> list[tuple[int, ...]]:
    if profile == "lex":
        pats = [p for p in itertools.product((1, -1), repeat=l)
                if lie_type == "B" or p.count(-1) % 2 == 0]
        return pats
    pats = []
    n_gen = l if lie_type == "B" else l - 1
    for code in range(2 ** n_gen):
        flips = [0] * l
        for k in range(n_gen):
            if code >> k & 1:
                if lie_type == "B":
                    flips[k] ^= 1
                else:
                    flips[k] ^= 1
                    flips[k + 1] ^= 1
        pats.append(tuple(-1 if x else 1 for x in flips))
    return pats


def _permutations(l: int, profile: str) -> list[tuple[int, ...]]:
    perms = list(itertools.permutations(range(1, l + 1)))
    if profile == "table":
        perms.sort(key=_sigma_key)
    return perms


@lru_cache(maxsize=None)
def weyl_arrays(l: int, lie_type: str, profile: str = "table"):
    """``(sigma, sinv, signs)`` as read-only int8 arrays, rows in enumeration order.

    ``sigma`` and ``sinv`` are 0-based images; ``signs[k, m] = f(m+1)``.
    """
    if profile not in PROFILES:
        raise DomainError(f"unknown ordering profile {profile!r}")
    perms = np.array(_permutations(l, profile), dtype=np.int8) - 1
    pats = np.array(_sign_patterns(l, lie_type, profile), dtype=np.int8)
    n_p, n_s = len(perms), len(pats)
    sigma = np.tile(perms, (n_s, 1))
    signs = np.repeat(pats, n_p, axis=0)
    sinv = np.empty_like(sigma)
    rows = np.arange(sigma.shape[0])[:, None]
    sinv[rows, sigma] = np.arange(l, dtype=np.int8)[None, :]
    for arr in (sigma, sinv, signs):
        arr.setflags(write=False)
    return sigma, sinv, signs


def weyl_order(l: int, lie_type: str) -> int:
    return 2 ** (l if lie_type == "B" else l - 1) * math.factorial(l)


def element_at(rs: RootSystemData, k: int, profile: str = "table") -> WeylElement:
    sigma, _, signs = weyl_arrays(rs.l, rs.lie_type, profile)
    return WeylElement(tuple(int(x) + 1 for x in sigma[k]), tuple(int(x) for x in signs[k]), rs.lie_type)


def enumerate_weyl(rs: RootSystemData, profile: str = "table") -> list[WeylElement]:
    """Every element of the Weyl group of ``rs``, in deterministic profile order."""
    sigma, _, signs = weyl_arrays(rs.l, rs.lie_type, profile)
    sig = (sigma.astype(np.int64) + 1).tolist()
    sgn = signs.astype(np.int64).tolist()
    return [WeylElement(tuple(a), tuple(b), rs.lie_type) for a, b in zip(sig, sgn)]


@lru_cache(maxsize=None)
def _inversions_cached(n: int, lie_type: str, l: int, profile: str, backend: str):
    from .rootsys import build_root_system

    rs = build_root_system(n)
    _, sinv, signs = weyl_arrays(l, lie_type, profile)
    inv = _kernels.inversion_matrix(sinv, signs, _kernels.encode_roots(rs.positive_roots), backend)
    inv.setflags(write=False)
    return inv


def group_inversions(rs: RootSystemData, profile: str = "table", backend: str | None = None) -> np.ndarray:
    """Inversion matrix of the whole group; columns follow ``rs.positive_roots``."""
    return _inversions_cached(rs.n, rs.lie_type, rs.l, profile, backend or _kernels.default_backend())


def group_lengths(rs: RootSystemData, profile: str = "table", backend: str | None = None) -> np.ndarray:
    return group_inversions(rs, profile, backend).sum(axis=1)
