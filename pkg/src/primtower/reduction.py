"""The complete reduction: every tower element splits as g' + remainder.

Pipeline per level: Hermite reduction, then the auxiliary reduction
(each polynomial coefficient replaced by its lower-level remainder via
integration by parts), then projection of the auxiliary polynomial onto
the chosen complement (coefficients' coordinates at the level's second
associated pair are eliminated against the basis pairs).  The remainder
map is constant-linear and idempotent with kernel exactly the set of
derivatives, so remainder 0 decides in-field integrability.

Basis pairs come in two flavours: the operator recurrence on the mu/nu
sequences (one new lower-level reduction per degree) and the naive
integration-by-parts route (kept for cross-checking and benchmarks);
both produce the same remainders because the projection target does not
depend on the basis of the derivative subspace.
"""

from dataclasses import dataclass

from .basis import basis_element, coefficient
from .elements import FieldElement, ONE, ZERO
from .errors import NotARemainderError
from .fieldpoly import FPoly, element_as_fraction, fpoly_squarefree
from .hermite import ext_derivative, hermite_reduce, phi0_reduce
from .polys import qq

OPERATOR = "operator"
NAIVE = "naive"


@dataclass(frozen=True)
class RPair:
    g: FieldElement
    r: FieldElement

    @property
    def integrable(self):
        return self.r.is_zero()

    def to_json(self, ctx):
        return {
            "g": ctx.render(self.g),
            "remainder": ctx.render(self.r),
            "integrable": self.integrable,
        }


@dataclass(frozen=True)
class AssociatedPairs:
    lam: FieldElement      # t' = lam' + phi_tp
    phi_tp: FieldElement   # nonzero lower-level remainder of t'
    theta: object          # effective atom of phi_tp
    c: FieldElement        # its nonzero coordinate


@dataclass(frozen=True)
class RemainderSplit:
    r0: FieldElement              # base-field component
    p_by_level: dict              # level -> FPoly with zero constant term
    s_by_level: dict              # level -> simple element

    @property
    def p_total(self):
        acc = ZERO
        for fp in self.p_by_level.values():
            acc = acc + fp.to_element()
        return acc

    @property
    def s_total(self):
        acc = ZERO
        for s in self.s_by_level.values():
            acc = acc + s
        return acc


def auxiliary_reduction(p, ctx, level, mode=OPERATOR):
    """p = q' + r with every coefficient of r a lower-level remainder;
    degrees of q and r do not exceed deg p."""
    var = p.var
    tprime = ctx.level_derivative(level)
    q = FPoly.zero(var)
    r = FPoly.zero(var)
    cur = p
    while not cur.is_zero():
        d = int(cur.degree())
        l = cur.lc()
        rp = reduce_at(l, ctx, level - 1, mode)
        q = q + FPoly.const(var, rp.g).shift(d)
        r = r + FPoly.const(var, rp.r).shift(d)
        cur = cur - FPoly.const(var, l).shift(d)
        if d > 0 and not rp.g.is_zero():
            cur = cur - FPoly.const(var, qq(d) * rp.g * tprime).shift(d - 1)
    return q, r


def _mu_nu(ctx, level, upto, mode):
    """mu_0 = lam; (mu_{k+1}, nu_{k+1}) is a reduction pair of mu_k * t'."""
    with ctx.lock:
        mu, nu = ctx.munu.setdefault(level, ([ctx.assoc[level].lam], [None]))
        tprime = ctx.level_derivative(level)
        while len(mu) <= upto:
            rp = reduce_at(mu[-1] * tprime, ctx, level - 1, mode)
            mu.append(rp.g)
            nu.append(rp.r)
        return mu, nu


def basis_pairs(ctx, level, d, mode=OPERATOR):
    """Pairs (u_k, v_k), k = 0..d, with u_k' = v_k, deg v_k = k, and
    lc(v_k) the level's associated remainder; they span the derivatives
    inside the auxiliary subspace up to degree d."""
    key = (level, mode)
    with ctx.lock:
        cache = ctx.basis_cache.setdefault(key, [])
        var = ctx.var_of_level(level)
        ap = ctx.assoc[level]
        t = FPoly.gen(var)
        if not cache:
            u0 = t - FPoly.const(var, ap.lam)
            v0 = FPoly.const(var, ap.phi_tp)
            cache.append((u0, v0))
        while len(cache) <= d:
            k = len(cache)
            if mode == NAIVE:
                cache.append(_naive_pair(ctx, level, k, mode, var, ap, t))
            else:
                cache.append(_operator_pair(ctx, level, k, mode, var, ap, t))
        return list(cache[:d + 1])


def _operator_pair(ctx, level, k, mode, var, ap, t):
    mu, nu = _mu_nu(ctx, level, k, mode)
    # L_{k,0}(t^k) = sum (-1)^{j+1} mu_j k!/(k-j)! t^{k-j}, same for M/nu
    lterm = FPoly.zero(var)
    mterm = FPoly.zero(var)
    fall = qq(1)
    for j in range(1, k + 1):
        fall = fall * qq(k - j + 1)
        sign = qq(1) if (j + 1) % 2 == 0 else qq(-1)
        lterm = lterm + FPoly.const(var, sign * fall * mu[j]).shift(k - j)
        mterm = mterm + FPoly.const(var, sign * fall * nu[j]).shift(k - j)
    u = (t ** (k + 1)).scale(FieldElement.const(qq(1, k + 1))) \
        - FPoly.const(var, ap.lam) * t ** k + lterm
    v = FPoly.const(var, ap.phi_tp) * t ** k - mterm
    return u, v


def _naive_pair(ctx, level, k, mode, var, ap, t):
    lead = FPoly.const(var, qq(k) * ap.lam * ctx.level_derivative(level))
    q_k, r_k = auxiliary_reduction(lead.shift(k - 1), ctx, level, mode)
    u = (t ** (k + 1)).scale(FieldElement.const(qq(1, k + 1))) \
        - FPoly.const(var, ap.lam) * t ** k + q_k
    v = FPoly.const(var, ap.phi_tp) * t ** k - r_k
    return u, v


def projection(r, ctx, level, mode=OPERATOR):
    """r = u' + v with every coefficient of v free of the level's chosen
    atom; r must lie in the auxiliary subspace."""
    var = r.var
    if r.is_zero():
        return FPoly.zero(var), FPoly.zero(var)
    if ctx.debug:
        for c in r.coeffs:
            if reduce_at(c, ctx, level - 1, mode).r != c:
                raise AssertionError("projection input outside the auxiliary subspace")
    ap = ctx.assoc[level]
    d = int(r.degree())
    pairs = basis_pairs(ctx, level, d, mode)
    u = FPoly.zero(var)
    v = r
    cinv = ap.c.inverse()
    for i in range(d + 1):
        k = d - i
        a = v.coeff(k)
        if a.is_zero():
            continue
        b = coefficient(a, ap.theta, ctx)
        if b.is_zero():
            continue
        ct = b * cinv
        uk, vk = pairs[k]
        u = u + uk.scale(ct)
        v = v - vk.scale(ct)
    return u, v


def reduce_level(f, ctx, level, mode=OPERATOR):
    """One full pipeline pass at exactly this level (>= 1)."""
    g_h, p, s = hermite_reduce(f, ctx, level)
    if p.is_zero():
        return RPair(g_h, s)
    q, r = auxiliary_reduction(p, ctx, level, mode)
    if r.is_zero():
        return RPair(g_h + q.to_element(), s)
    u, v = projection(r, ctx, level, mode)
    return RPair(g_h + q.to_element() + u.to_element(), s + v.to_element())


def reduce_at(f, ctx, level, mode=OPERATOR):
    """Reduction pair of f with respect to the level's complete reduction.

    The pipeline runs at the element's own minimal level; the result is
    lifted level by level using the associated pairs, which is the
    degree-zero path of the full pipeline."""
    rp, _ = _reduce_with_lift(f, ctx, level, mode)
    return rp


def _reduce_with_lift(f, ctx, level, mode):
    j = ctx.level_of(f)
    if j > level:
        raise ValueError("element lives above the requested level")
    if j == 0:
        rp = phi0_reduce(f, ctx)
    else:
        rp = reduce_level(f, ctx, j, mode)
    g, r = rp.g, rp.r
    lifts = []
    for k in range(j, level):
        ap = ctx.assoc[k + 1]
        ct = ZERO
        if not r.is_zero():
            b = coefficient(r, ap.theta, ctx)
            if not b.is_zero():
                ct = -(b * ap.c.inverse())
        lifts.append(ct)
        if not ct.is_zero():
            r = r + ct * ap.phi_tp
            g = g - ct * (ctx.gen(k + 1) - ap.lam)
    return RPair(g, r), lifts


def complete_reduce(f, ctx, mode=OPERATOR):
    """Reduction pair with respect to the full tower."""
    return reduce_at(f, ctx, ctx.nlevels, mode)


def restrict_level(f, ctx, to_level=None, mode=OPERATOR):
    """Constants expressing how the remainder of a low-level element
    shifts when reduced at a higher level: one coefficient per level
    crossed, each scaling that level's associated remainder."""
    if to_level is None:
        to_level = ctx.nlevels
    _, lifts = _reduce_with_lift(f, ctx, to_level, mode)
    return lifts


def is_remainder(r, ctx, mode=OPERATOR):
    """True when r is fixed by the reduction at its own level."""
    return reduce_at(r, ctx, ctx.level_of(r), mode).r == r


def remainder_split(r, ctx, check=True):
    """Split a remainder into base component, polynomial parts with zero
    constant term per level, and simple parts per level."""
    if check and not is_remainder(r, ctx):
        raise NotARemainderError("input is not fixed by the reduction")
    p_by_level = {}
    s_by_level = {}
    cur = r
    while not ctx.is_constant(cur) and ctx.level_of(cur) >= 1:
        level = ctx.level_of(cur)
        var = ctx.var_of_level(level)
        num, den = element_as_fraction(cur, var)
        p, rem = num.divmod(den)
        if not rem.is_zero():
            s_by_level[level] = rem.to_element() / den.to_element()
        tail = FPoly(var, (ZERO,) + p.coeffs[1:])
        if not tail.is_zero():
            p_by_level[level] = tail
        cur = p.coeff(0)
    return RemainderSplit(r0=cur, p_by_level=p_by_level, s_by_level=s_by_level)


def derivative_check(f, rp, ctx):
    """Exact soundness identity: derivative(g) + r == f."""
    return ctx.derivative(rp.g) + rp.r == f
