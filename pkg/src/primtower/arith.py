"""Public arithmetic surface: division, gcd, factorization, expansions.

Thin facade over the polynomial layers with the factorization result
type.  Polynomial means :class:`FPoly` (coefficients one level down),
Rational is the backend rational type.
"""

from dataclasses import dataclass

from .elements import FieldElement
from .errors import ZeroDenominatorError
from .fieldpoly import (
    FPoly,
    element_as_fraction,
    fpoly_factor,
    fpoly_gcd,
    fpoly_squarefree,
    proper_split,
    q_adic_expand,
)
from .intfactor import DEFAULT_LIMITS, Limits

__all__ = [
    "Factorization",
    "Limits",
    "DEFAULT_LIMITS",
    "poly_divrem",
    "poly_gcd",
    "squarefree_factor",
    "irreducible_factor",
    "q_adic_expand",
    "poly_proper_split",
]


@dataclass(frozen=True)
class Factorization:
    """unit * prod(factor**multiplicity) == the factored polynomial."""

    unit: FieldElement
    factors: tuple

    def expand(self):
        if not self.factors:
            var = 0
        else:
            var = self.factors[0][0].var
        acc = FPoly.const(var, self.unit)
        for f, m in self.factors:
            acc = acc * f ** m
        return acc


def poly_divrem(a, b):
    """a = quotient*b + remainder with deg(remainder) < deg(b)."""
    if b.is_zero():
        raise ZeroDenominatorError("division by zero polynomial")
    return a.divmod(b)


def poly_gcd(a, b):
    return fpoly_gcd(a, b)


def squarefree_factor(a, ctx=None):
    unit, factors = fpoly_squarefree(a)
    return Factorization(unit=unit, factors=tuple(factors))


def irreducible_factor(a, ctx=None):
    limits = ctx.limits if ctx is not None else DEFAULT_LIMITS
    memo = ctx.factor_memo if ctx is not None else None
    if ctx is not None:
        with ctx.lock:
            unit, factors = fpoly_factor(a, limits, memo)
    else:
        unit, factors = fpoly_factor(a, limits, memo)
    return Factorization(unit=unit, factors=tuple(factors))


def poly_proper_split(f, var=None):
    """f = polynomial part + proper part at its top variable."""
    if var is None:
        var = f.top_var()
        if var < 0:
            var = 0
    return proper_split(f, var)
