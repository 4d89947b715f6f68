"""Kostant representatives, dot action and the coset factorisation W^P0 = W_i^0 W^Pi.

The sets ``W^{P_i}`` are computed from their definition (``w(Phi^-) & Phi^+``
contained in the radical roots ``Delta_i``) over the whole group.  The
combinatorial membership criteria in terms of ``(sigma, f)`` are implemented
separately by :func:`closed_form_membership` and only used as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import ConsistencyError, DomainError
from .rootsys import ParabolicDatum, RootSystemData, SymbolicWeight, build_root_system
from .weyl import (WeylElement, act_on_weight, compose, element_at, group_inversions,
                   inversion_set)


def dot_action(w: WeylElement, lam: SymbolicWeight, rs: RootSystemData) -> SymbolicWeight:
    """``w * lam = w(lam + rho) - rho``."""
    if lam.rank != rs.l:
        raise DomainError(f"weight of rank {lam.rank} for a root system of rank {rs.l}")
    return act_on_weight(w, lam + rs.rho) - rs.rho


@dataclass(frozen=True)
class KostantSet:
    parabolic: ParabolicDatum
    elements: tuple[WeylElement, ...]
    lengths: tuple[int, ...]
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._index.update({w: k for k, w in enumerate(self.elements)})

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, w):
        return w in self._index

    def index(self, w: WeylElement) -> int:
        return self._index[w]

    def length_of(self, w: WeylElement) -> int:
        return self.lengths[self._index[w]]


def _allowed_mask(rs: RootSystemData, roots) -> np.ndarray:
    allowed = set(roots)
    return np.array([r in allowed for r in rs.positive_roots], dtype=np.bool_)


def _members(rs: RootSystemData, roots, profile: str) -> tuple[np.ndarray, np.ndarray]:
    inv = group_inversions(rs, profile)
    allowed = _allowed_mask(rs, roots)
    rows = np.flatnonzero(~(inv & ~allowed[None, :]).any(axis=1))
    return rows, inv[rows].sum(axis=1)


@lru_cache(maxsize=None)
def _kostant_cached(n: int, i: int, profile: str) -> KostantSet:
    rs = build_root_system(n)
    par = rs.parabolic(i)
    rows, lengths = _members(rs, par.delta, profile)
    elements = tuple(element_at(rs, int(k), profile) for k in rows)
    return KostantSet(par, elements, tuple(int(x) for x in lengths))


def kostant_representatives(rs: RootSystemData, i: int, profile: str = "table") -> KostantSet:
    """``W^{P_i}`` in enumeration-profile order, with cached lengths."""
    rs.parabolic(i)  # validates i
    return _kostant_cached(rs.n, i, profile)


def is_kostant_member(w: WeylElement, rs: RootSystemData, i: int) -> bool:
    """Brute-force membership: every inverted root lies in ``Delta_i``."""
    delta = set(rs.parabolic(i).delta)
    return all(r in delta for r in inversion_set(w, rs))


def closed_form_membership(w: WeylElement, rs: RootSystemData, i: int) -> bool:
    """Membership in ``W^{P_i}`` via conditions on ``sigma`` and ``f`` alone.

    Quantifier ranges that are empty (small rank) count as satisfied.
    """
    if i not in (0, 1, 2):
        raise DomainError(f"parabolic id must be 0, 1 or 2, got {i!r}")
    l = rs.l
    f = w.signs
    sinv = w.sigma_inverse

    # f(m) = 1 for m > 2 (B) or 2 < m < l (D); sigma^{-1} increasing on 3..l
    sign_top = l if rs.lie_type == "B" else l - 1
    if any(f[m - 1] != 1 for m in range(3, sign_top + 1)):
        return False
    if any(sinv[m - 1] > sinv[m] for m in range(3, l)):
        return False
    if i == 0:
        return True
    if i == 1:
        return f[1] == 1 and (l < 3 or sinv[1] < sinv[2])
    f1, f2 = f[0], f[1]
    if f1 == 1 and f2 == -1:
        return True
    if f1 == 1 and f2 == 1:
        return sinv[0] < sinv[1]
    if f1 == -1 and f2 == -1:
        return sinv[0] > sinv[1]
    return False


@lru_cache(maxsize=None)
def _w0_cached(n: int, i: int, profile: str) -> tuple[WeylElement, ...]:
    rs = build_root_system(n)
    levi = set(rs.positive_roots) - set(rs.parabolic(i).delta)
    allowed = [r for r in rs.parabolic(0).delta if r in levi]
    rows, _ = _members(rs, allowed, profile)
    return tuple(element_at(rs, int(k), profile) for k in rows)


def w0_set(rs: RootSystemData, i: int, profile: str = "table") -> tuple[WeylElement, ...]:
    """``W_i^0``: minimal representatives of ``P0 & M_i`` in the Levi ``M_i``.

    Computed as the elements whose inversions lie in ``Delta_0`` and in the
    positive roots of ``M_i`` (i.e. ``W_{M_i} & W^{P0}``).
    """
    if i not in (1, 2):
        raise DomainError(f"W_i^0 is defined for i in {{1, 2}}, got {i!r}")
    return _w0_cached(rs.n, i, profile)


def w0_closed_form(w: WeylElement, rs: RootSystemData, i: int) -> bool:
    """Closed-form description of ``W_i^0`` membership, as a cross-check."""
    if i == 2:
        return w.is_identity() or (w.sigma[:2] == (2, 1) and w.sigma[2:] == tuple(range(3, rs.l + 1))
                                   and all(s == 1 for s in w.signs))
    if i != 1:
        raise DomainError(f"W_i^0 is defined for i in {{1, 2}}, got {i!r}")
    if w.sigma[0] != 1 or w.signs[0] != 1:
        return False
    if rs.lie_type == "B":
        if any(s != 1 for m, s in enumerate(w.signs, 1) if m != 2):
            return False
        sinv = w.sigma_inverse
        return all(sinv[m - 1] < sinv[m] for m in range(3, rs.l))
    return closed_form_membership(w, rs, 0)


@dataclass(frozen=True)
class CosetFactorization:
    tilde: WeylElement
    rep: WeylElement
    tilde_length: int
    rep_length: int


def coset_factorize(w: WeylElement, rs: RootSystemData, i: int) -> CosetFactorization:
    """The unique ``(u, v)`` in ``W_i^0 x W^{P_i}`` with ``u v = w`` and additive length."""
    if i not in (1, 2):
        raise DomainError(f"coset factorisation is defined for i in {{1, 2}}, got {i!r}")
    p0 = kostant_representatives(rs, 0)
    if w not in p0:
        raise DomainError(f"{w.render()} is not a Kostant representative for P0")
    pi = kostant_representatives(rs, i)
    total = p0.length_of(w)
    for u in w0_set(rs, i):
        v = compose(u.inverse(), w)
        if v in pi:
            lu = p0.length_of(u)
            lv = pi.length_of(v)
            if lu + lv == total:
                return CosetFactorization(u, v, lu, lv)
    raise ConsistencyError(f"no W_{i}^0 W^P{i} factorisation of {w.render()}")


# ---------------------------------------------------------------------------
# row labels


def label_of(w: WeylElement, rs: RootSystemData) -> str:
    """``w<k>`` with ``k`` the 1-based position in ``W^{P0}`` (table profile)."""
    return f"w{kostant_representatives(rs, 0).index(w) + 1}"


def element_by_label(rs: RootSystemData, label: str) -> WeylElement:
    p0 = kostant_representatives(rs, 0)
    try:
        k = int(label.lstrip("w"))
    except ValueError:
        raise DomainError(f"bad label {label!r}") from None
    if not 1 <= k <= len(p0):
        raise DomainError(f"label {label!r} out of range 1..{len(p0)}")
    return p0.elements[k - 1]
