"""Weights of the mixed Hodge structures on the boundary summands.

A highest weight ``lambda = sum a_i e_i + c k`` gives a variation of Hodge
structure of weight ``-2c``.  Everything here is an :class:`AffineForm` in
the ``a_i`` and ``c`` (or a constant, for concrete weights).
"""

from __future__ import annotations

from .affine import AffineForm
from .errors import DomainError
from .kostant import dot_action
from .rootsys import RootSystemData, SymbolicWeight
from .weyl import WeylElement

WeightExpression = AffineForm


def coefficient_weight(lam: SymbolicWeight) -> AffineForm:
    """``-2c``, the weight of the variation attached to ``lam``."""
    return -2 * lam.kappa


def middle_weight(q: int, lam: SymbolicWeight) -> WeightExpression:
    """Lower bound ``q - 2c`` for the weights on ``H^q``."""
    if q < 0:
        raise DomainError(f"degree must be non-negative, got {q}")
    return q + coefficient_weight(lam)


def boundary_face_weight(w: WeylElement, lam: SymbolicWeight, rs: RootSystemData) -> WeightExpression:
    """Pure weight ``-2c - 2 n1`` of the minimal-face summand indexed by ``w``."""
    return coefficient_weight(lam) - 2 * dot_action(w, lam, rs).eps[0]


def levi_weight_bound(i: int, q: int, dotted: SymbolicWeight) -> WeightExpression:
    """Lower weight bound on ``H^q`` of the Levi ``M_i`` with coefficients ``dotted``.

    ``q - 2c - 2 n1`` for ``i = 1`` and ``q - 2c - n1 - n2`` for ``i = 2``.
    """
    if i == 1:
        return q + coefficient_weight(dotted) - 2 * dotted.eps[0]
    if i == 2:
        return q + coefficient_weight(dotted) - dotted.eps[0] - dotted.eps[1]
    raise DomainError(f"Levi weight bounds exist for i in {{1, 2}}, got {i!r}")
