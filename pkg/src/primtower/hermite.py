"""Hermite reduction inside one primitive extension level.

Splits f into g' + p + s where p is the polynomial part in the level's
generator and s is proper with squarefree denominator.  In a primitive
extension every squarefree denominator is normal (a common factor of d
and d' would be its own derivative's divisor with a degree drop, which
forces a nonconstant constant), so squarefree decomposition is enough
and each pass removes one multiplicity via an extended-Euclid solve.
The same loop serves the base level, where the generator is the base
variable itself.
"""

from .elements import FieldElement, ZERO
from .fieldpoly import FPoly, element_as_fraction, fpoly_squarefree, invert_mod
from .polys import qq


def ext_derivative(fp, ctx, level):
    """The tower derivation applied to a polynomial in t_level."""
    tprime = ctx.level_derivative(level)
    lifted = fp.map_coeffs(ctx.derivative)
    return lifted + fp.formal_derivative().scale(tprime)


def hermite_reduce(f, ctx, level):
    """(g, p, s) with f = g' + p + s; p a polynomial in the level's
    generator, s proper with squarefree (hence normal) denominator."""
    if f.is_zero():
        var = ctx.var_of_level(level)
        return ZERO, FPoly.zero(var), ZERO
    var = ctx.var_of_level(level)
    num, den = element_as_fraction(f, var)
    p, r = num.divmod(den)
    g, s = _reduce_proper(r, den, ctx, level)
    return g, p, s


def _reduce_proper(a, d, ctx, level):
    """a/d proper, d monic; peels multiplicities by integration by parts."""
    g = ZERO
    while True:
        _, dec = fpoly_squarefree(d)
        v_k = None
        for fac, m in dec:
            if m >= 2 and (v_k is None or m > v_k[1]):
                v_k = (fac, m)
        if v_k is None:
            break
        v, k = v_k
        u = d
        for _ in range(k):
            u = u.divmod(v)[0]
        km1 = FieldElement.const(k - 1)
        vprime = ext_derivative(v, ctx, level)
        w = (u * vprime).scale(km1).rem(v)
        inv = invert_mod(w, v)
        b = (-(a.rem(v) * inv)).rem(v)
        # a + (k-1) u v' b  is divisible by v; the quotient minus u*b'
        # is the next numerator over u * v^(k-1)
        lifted, rem = (a + (u * vprime * b).scale(km1)).divmod(v)
        if not rem.is_zero():
            raise AssertionError("integration by parts step failed to divide")
        a = lifted - u * ext_derivative(b, ctx, level)
        d = u * v ** (k - 1)
        g = g + b.to_element() / (v ** (k - 1)).to_element()
    if a.is_zero():
        return g, ZERO
    return g, a.to_element() / d.to_element()


def integrate_base_polynomial(p):
    """Exact antiderivative of a polynomial in the base variable; every
    element of C[x] is a derivative."""
    out = [ZERO]
    for k, c in enumerate(p.coeffs):
        out.append(c * qq(1, k + 1))
    return FPoly(p.var, out)


def phi0_reduce(f, ctx):
    """Base-field reduction: remainder is the proper part with squarefree
    denominator, the polynomial part integrates exactly."""
    from .reduction import RPair
    if f.is_zero():
        return RPair(ZERO, ZERO)
    if ctx.is_constant(f):
        return RPair(f * ctx.gen(0), ZERO)
    g, p, s = hermite_reduce(f, ctx, 0)
    g = g + integrate_base_polynomial(p).to_element()
    return RPair(g, s)
