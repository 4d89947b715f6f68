"""Exact affine linear forms ``k0 + sum(k_j * x_j)`` over named integer variables.

Every weight coordinate, weight expression and filter bound in the package is
an :class:`AffineForm`.  The constant is a :class:`fractions.Fraction` (the
Weyl vector has half-integer entries); variable coefficients are integers.

>>> a1, a2 = AffineForm.var("a1"), AffineForm.var("a2")
>>> (a2 - 1).render()
'a2-1'
>>> (10 + 2 * a1).render(const_first=True)
'10+2a1'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

Number = Union[int, Fraction]

_VAR_RE = re.compile(r"^([A-Za-z]+)(\d*)$")


def var_key(name: str) -> tuple:
    """Sort key for variable names: ``a1 < a2 < ... < a10 < c``."""
    m = _VAR_RE.match(name)
    if m is None:
        return (2, name, 0)
    stem, idx = m.groups()
    return (1 if stem == "c" else 0, stem, int(idx) if idx else 0)


def _as_fraction(x: Number) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class AffineForm:
    """Immutable exact affine form.

    ``coeffs`` is a tuple of ``(variable, coefficient)`` pairs sorted by
    :func:`var_key` with no zero coefficients, so structural equality is
    mathematical equality.
    """

    const: Fraction = Fraction(0)
    coeffs: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "const", _as_fraction(self.const))
        merged: dict[str, int] = {}
        for name, k in self.coeffs:
            if isinstance(k, Fraction):
                if k.denominator != 1:
                    raise ValueError(f"non-integer coefficient {k} for {name}")
                k = k.numerator
            if not isinstance(k, int):
                raise TypeError(f"coefficient of {name} must be an integer")
            merged[name] = merged.get(name, 0) + k
        canon = tuple(sorted(((v, k) for v, k in merged.items() if k != 0),
                             key=lambda t: var_key(t[0])))
        object.__setattr__(self, "coeffs", canon)

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value: Number) -> AffineForm:
        return cls(_as_fraction(value))

    @classmethod
    def var(cls, name: str, coeff: int = 1) -> AffineForm:
        return cls(Fraction(0), ((name, coeff),))

    @classmethod
    def coerce(cls, value: Union[AffineForm, Number]) -> AffineForm:
        if isinstance(value, AffineForm):
            return value
        return cls.constant(value)

    # -- inspection ---------------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.coeffs)

    def coeff(self, name: str) -> int:
        for v, k in self.coeffs:
            if v == name:
                return k
        return 0

    def is_constant(self) -> bool:
        return not self.coeffs

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, (AffineForm, int, Fraction)):
            return NotImplemented
        other = AffineForm.coerce(other)
        return AffineForm(self.const + other.const, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __neg__(self):
        return AffineForm(-self.const, tuple((v, -k) for v, k in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, (AffineForm, int, Fraction)):
            return NotImplemented
        return self + (-AffineForm.coerce(other))

    def __rsub__(self, other):
        return AffineForm.coerce(other) - self

    def __mul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return AffineForm(self.const * scalar,
                          tuple((v, k * scalar) for v, k in self.coeffs))

    __rmul__ = __mul__

    def evaluate(self, assignment: Mapping[str, Number]) -> Fraction:
        """Value at a full assignment; a missing variable raises ``KeyError``."""
        total = self.const
        for v, k in self.coeffs:
            total += k * _as_fraction(assignment[v])
        return total

    def substitute(self, mapping: Mapping[str, AffineForm | Number]) -> AffineForm:
        out = AffineForm.constant(self.const)
        for v, k in self.coeffs:
            repl = mapping.get(v)
            out = out + (AffineForm.var(v, k) if repl is None else k * AffineForm.coerce(repl))
        return out

    # -- text ---------------------------------------------------------------

    def render(self, const_first: bool = False) -> str:
        """ASCII rendering with implicit unit coefficients.

        ``const_first`` selects the weight-column style (``10+2a1``) over the
        coordinate style (``-a1-5``).
        """
        terms = []
        for v, k in self.coeffs:
            mag = "" if abs(k) == 1 else str(abs(k))
            terms.append(("-" if k < 0 else "+", mag + v))
        if self.const != 0 or not terms:
            c = self.const
            text = str(abs(c.numerator)) if c.denominator == 1 else f"{abs(c.numerator)}/{c.denominator}"
            const_term = ("-" if c < 0 else "+", text)
            terms = [const_term] + terms if const_first else terms + [const_term]
        out = "".join(s + t for s, t in terms)
        return out[1:] if out.startswith("+") else out

    def __str__(self):
        return self.render()

    @classmethod
    def parse(cls, text: str) -> AffineForm:
        """Inverse of :meth:`render` (either style); whitespace is ignored."""
        s = text.replace(" ", "").replace("−", "-")
        if not s:
            raise ValueError("empty affine form")
        if s[0] not in "+-":
            s = "+" + s
        pos = 0
        const = Fraction(0)
        coeffs = []
        term_re = re.compile(r"([+-])(\d+(?:/\d+)?)?([A-Za-z]+\d*)?")
        while pos < len(s):
            m = term_re.match(s, pos)
            if m is None or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ValueError(f"cannot parse affine form {text!r}")
            sign = -1 if m.group(1) == "-" else 1
            num = Fraction(m.group(2)) if m.group(2) else None
            if m.group(3):
                if num is not None and num.denominator != 1:
                    raise ValueError(f"non-integer coefficient in {text!r}")
                coeffs.append((m.group(3), sign * (int(num) if num is not None else 1)))
            else:
                const += sign * num
            pos = m.end()
        return cls(const, tuple(coeffs))


ZERO = AffineForm()
