"""Canonical rational-function elements of a tower field.

A :class:`FieldElement` is a reduced fraction of two values: numerator
over denominator with gcd one, the denominator integer-primitive with a
positive leading rational.  Elements are immutable, hashable, and
compare structurally, so equality of canonical forms is exactly field
equality.  An element mentions only the variables it actually depends
on, which makes "lives in the subfield K_j" a structural property.
"""

from .errors import ZeroDenominatorError
from .polys import (
    QONE,
    QZERO,
    exact_div,
    integer_primitive,
    is_q,
    qq,
    top_var,
    variables_of,
    vadd,
    vgcd,
    vis_zero,
    vmonomial,
    vmul,
    vneg,
    vpow,
    vsub,
)


class FieldElement:
    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=QONE, _canonical=False):
        if not _canonical:
            num, den = _normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def const(q):
        q = q if is_q(q) else qq(q)
        return FieldElement(q, QONE, _canonical=True)

    @staticmethod
    def var(index):
        return FieldElement(vmonomial(index, 1), QONE, _canonical=True)

    # -- predicates ----------------------------------------------------

    def is_zero(self):
        return vis_zero(self.num)

    def is_one(self):
        return is_q(self.num) and self.num == 1 and is_q(self.den) and self.den == 1

    def is_rational(self):
        return is_q(self.num) and is_q(self.den)

    def as_q(self):
        if not self.is_rational():
            raise ValueError("element is not a rational constant")
        return self.num / self.den

    def top_var(self):
        """Largest variable index present, or -1 for rationals."""
        return max(top_var(self.num), top_var(self.den))

    def variables(self):
        return variables_of(self.num) | variables_of(self.den)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if vis_zero(a):
            return other
        if vis_zero(c):
            return self
        g = vgcd(b, d)
        if is_q(g) and g == 1:
            num = vadd(vmul(a, d), vmul(c, b))
            den = vmul(b, d)
            return FieldElement(*_canon_den(num, den), _canonical=True)
        b1 = exact_div(b, g)
        d1 = exact_div(d, g)
        num = vadd(vmul(a, d1), vmul(c, b1))
        if vis_zero(num):
            return ZERO
        g2 = vgcd(num, g)
        num = exact_div(num, g2)
        den = vmul(b1, exact_div(d, g2))
        return FieldElement(*_canon_den(num, den), _canonical=True)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return FieldElement(vneg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        a, b, c, d = self.num, self.den, other.num, other.den
        if vis_zero(a) or vis_zero(c):
            return ZERO
        g1 = vgcd(a, d)
        g2 = vgcd(c, b)
        num = vmul(exact_div(a, g1), exact_div(c, g2))
        den = vmul(exact_div(b, g2), exact_div(d, g1))
        return FieldElement(*_canon_den(num, den), _canonical=True)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def inverse(self):
        if self.is_zero():
            raise ZeroDenominatorError("division by zero element")
        return FieldElement(*_canon_den(self.den, self.num), _canonical=True)

    def __pow__(self, n):
        if n == 0:
            return ONE
        if n < 0:
            return self.inverse() ** (-n)
        return FieldElement(*_canon_den(vpow(self.num, n), vpow(self.den, n)),
                            _canonical=True)

    # -- comparison ------------------------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"FieldElement({self.num!r}, {self.den!r})"


def _coerce(x):
    if isinstance(x, FieldElement):
        return x
    if isinstance(x, int) or is_q(x):
        return FieldElement.const(x)
    return NotImplemented


def _canon_den(num, den):
    """Fix the denominator's sign and rational content (gcd already 1)."""
    c, den = integer_primitive(den)
    if c != 1:
        num = vmul(num, _qinv_value(c))
    return num, den


def _qinv_value(c):
    return qq(1) / c


def _normalize(num, den):
    if vis_zero(den):
        raise ZeroDenominatorError("zero denominator")
    if vis_zero(num):
        return QZERO, QONE
    g = vgcd(num, den)
    if not (is_q(g) and g == 1):
        num = exact_div(num, g)
        den = exact_div(den, g)
    return _canon_den(num, den)


ZERO = FieldElement.const(0)
ONE = FieldElement.const(1)


def elem_from_value(v):
    return FieldElement(v, QONE)


def lin_comb(pairs):
    """Sum of coeff * element over (coeff, element) pairs."""
    acc = ZERO
    for c, e in pairs:
        acc = acc + c * e
    return acc
