"""Univariate polynomials in one tower generator over the field below it.

:class:`FPoly` is the monic-denominator view the reduction algorithms
work in: a dense coefficient vector of :class:`FieldElement` values in a
single variable.  gcds, squarefree splits and irreducible factorizations
are delegated to the multivariate value layer (clear denominators,
compute there, re-monicize), which avoids fraction blowup inside the
remainder sequences.
"""

from .elements import FieldElement, ONE, ZERO, elem_from_value
from .errors import ZeroDenominatorError
from .intfactor import DEFAULT_LIMITS, factor_value
from .polys import (
    QONE,
    canonical_key,
    exact_div,
    mkpoly,
    qq,
    squarefree_decomposition,
    top_var,
    vcoeffs,
    vcontent_wrt,
    vdeg,
    vgcd,
    vlcm,
    vis_zero,
    vmonomial,
    vmul,
)

NEG_INF = float("-inf")


class FPoly:
    __slots__ = ("var", "coeffs")

    def __init__(self, var, coeffs=()):
        n = len(coeffs)
        while n and coeffs[n - 1].is_zero():
            n -= 1
        self.var = var
        self.coeffs = tuple(coeffs[:n])

    @staticmethod
    def zero(var):
        return FPoly(var)

    @staticmethod
    def const(var, elem):
        return FPoly(var, (elem,))

    @staticmethod
    def gen(var):
        return FPoly(var, (ZERO, ONE))

    def is_zero(self):
        return not self.coeffs

    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def lc(self):
        return self.coeffs[-1] if self.coeffs else ZERO

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else ZERO

    def __eq__(self, other):
        return (isinstance(other, FPoly) and self.var == other.var
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.var, self.coeffs))

    def __repr__(self):
        return f"FPoly(v{self.var}, {list(self.coeffs)!r})"

    # -- ring operations ------------------------------------------------

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return FPoly(self.var, out)

    def __neg__(self):
        return FPoly(self.var, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return FPoly(self.var)
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, ci in enumerate(self.coeffs):
            if ci.is_zero():
                continue
            for j, cj in enumerate(other.coeffs):
                out[i + j] = out[i + j] + ci * cj
        return FPoly(self.var, out)

    def __pow__(self, n):
        r = FPoly.const(self.var, ONE)
        b = self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b * b
        return r

    def scale(self, elem):
        if elem.is_zero():
            return FPoly(self.var)
        return FPoly(self.var, tuple(c * elem for c in self.coeffs))

    def shift(self, k):
        """Multiply by var**k."""
        if self.is_zero() or k == 0:
            return self
        return FPoly(self.var, (ZERO,) * k + self.coeffs)

    def map_coeffs(self, fn):
        return FPoly(self.var, tuple(fn(c) for c in self.coeffs))

    def formal_derivative(self):
        return FPoly(self.var,
                     tuple(qq(k) * c for k, c in enumerate(self.coeffs))[1:])

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDenominatorError("division by zero polynomial")
        if self.is_zero() or len(self.coeffs) < len(other.coeffs):
            return FPoly(self.var), self
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lb = other.lc().inverse()
        q = [ZERO] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            qc = c * inv_lb
            q[k - db] = qc
            for j, bj in enumerate(other.coeffs):
                rem[k - db + j] = rem[k - db + j] - qc * bj
        return FPoly(self.var, q), FPoly(self.var, rem[:db])

    def rem(self, other):
        return self.divmod(other)[1]

    def monic(self):
        """(leading coefficient, self / lc)."""
        if self.is_zero():
            return ZERO, self
        l = self.lc()
        if l.is_one():
            return l, self
        return l, self.scale(l.inverse())

    def to_element(self):
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * FieldElement.var(self.var) + c
        return acc

    def to_value_pair(self):
        """(value numerator, value common denominator) clearing coefficient
        denominators; numerator/denominator == self as an element."""
        den = QONE
        for c in self.coeffs:
            den = vlcm(den, c.den)
        num = mkpoly(self.var, [vmul(c.num, exact_div(den, c.den))
                                for c in self.coeffs])
        return num, den

    @staticmethod
    def from_value(v, var):
        """Value with variables <= var, viewed as a polynomial in var."""
        return FPoly(var, [elem_from_value(c) for c in vcoeffs(v, var)])

    def subst(self, elem):
        """Evaluate at a field element."""
        acc = ZERO
        for c in reversed(self.coeffs):
            acc = acc * elem + c
        return acc


def xgcd(a, b):
    """Extended Euclid over the coefficient field: returns monic g and
    s, t with s*a + t*b = g."""
    var = a.var
    r0, r1 = a, b
    s0, s1 = FPoly.const(var, ONE), FPoly.zero(var)
    t0, t1 = FPoly.zero(var), FPoly.const(var, ONE)
    while not r1.is_zero():
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    l, g = r0.monic()
    inv = l.inverse()
    return g, s0.scale(inv), t0.scale(inv)


def invert_mod(a, q):
    """Inverse of a modulo q; requires gcd(a, q) = 1."""
    g, s, _ = xgcd(a, q)
    if g.degree() != 0:
        raise ZeroDenominatorError("element not invertible modulo the divisor")
    return s


def element_as_fraction(f, var):
    """f = N/D with N, D polynomials in var over the field below and D
    monic; the canonical monic-denominator view."""
    num = FPoly.from_value(f.num, var) if top_var(f.num) <= var else None
    den = FPoly.from_value(f.den, var) if top_var(f.den) <= var else None
    if num is None or den is None:
        raise ValueError("element does not live at the requested level")
    scale = den.lc().inverse()
    return num.scale(scale), den.scale(scale)


def proper_split(f, var):
    """f = poly + proper with deg(num(proper)) < deg(den(proper))."""
    num, den = element_as_fraction(f, var)
    if den.degree() == 0:
        return num, ZERO
    p, r = num.divmod(den)
    return p, r.to_element() / den.to_element()


def fpoly_gcd(a, b):
    """Monic gcd over the coefficient field; gcd(a, 0) = monic(a)."""
    if a.is_zero() and b.is_zero():
        return FPoly.zero(a.var)
    if a.is_zero():
        return b.monic()[1]
    if b.is_zero():
        return a.monic()[1]
    var = a.var
    na, _ = a.to_value_pair()
    nb, _ = b.to_value_pair()
    g = vgcd(na, nb)
    g = exact_div(g, vcontent_wrt(g, var))
    if vdeg(g, var) <= 0:
        return FPoly.const(var, ONE)
    return FPoly.from_value(g, var).monic()[1]


def fpoly_squarefree(a, _limits=None):
    """Squarefree decomposition: (unit, [(monic squarefree factor, mult)])
    with strictly increasing multiplicities (Yun)."""
    if a.is_zero():
        raise ZeroDenominatorError("squarefree factorization of zero")
    var = a.var
    unit = a.lc()
    if a.degree() == 0:
        return unit, []
    na, _ = a.to_value_pair()
    _, pieces = squarefree_decomposition(na, var)
    out = [(FPoly.from_value(g, var).monic()[1], m) for g, m in pieces]
    out.sort(key=lambda fm: fm[1])
    return unit, out


def fpoly_factor(a, limits=None, memo=None):
    """Irreducible factorization over the tower field: (unit, [(monic
    irreducible factor, mult)]) in the canonical deterministic order."""
    if a.is_zero():
        raise ZeroDenominatorError("factorization of zero")
    var = a.var
    unit = a.lc()
    if a.degree() == 0:
        return unit, []
    na, _ = a.to_value_pair()
    _, facs = factor_value(na, limits or DEFAULT_LIMITS, memo)
    out = []
    for f, m in facs:
        if vdeg(f, var) > 0:
            out.append((FPoly.from_value(f, var).monic()[1], m, canonical_key(f)))
    out.sort(key=lambda fmk: fmk[2])
    return unit, [(f, m) for f, m, _ in out]


def q_adic_expand(r, q, m):
    """Coefficients h_1..h_m of q^-1..q^-m in the q-adic expansion of the
    proper fraction r, where q is monic with multiplicity exactly m in
    the denominator of r."""
    var = q.var
    num, den = element_as_fraction(r, var)
    if num.degree() >= den.degree():
        raise ValueError("q-adic expansion requires a proper fraction")
    u = den
    for _ in range(m):
        quo, rem = u.divmod(q)
        if not rem.is_zero():
            raise ValueError("q does not divide the denominator with the stated multiplicity")
        u = quo
    if u.degree() >= q.degree() and u.rem(q).is_zero():
        raise ValueError("multiplicity of q in the denominator exceeds the stated one")
    qm = q ** m
    inv_u = invert_mod(u, qm)
    b = (num * inv_u).rem(qm)
    digits = []
    cur = b
    for _ in range(m):
        cur, d = cur.divmod(q)
        digits.append(d)
    # digits[j] is the coefficient of q**j; h_l = digits[m-l]
    return [digits[m - l] for l in range(1, m + 1)]


def partial_fraction_atoms(r, den_factors):
    """All q-adic pieces of a proper fraction r over its factored monic
    denominator: yields (q, j, h_j) per factor q of multiplicity m_q."""
    out = []
    for q, m in den_factors:
        hs = q_adic_expand(r, q, m)
        for l in range(1, m + 1):
            h = hs[l - 1]
            if not h.is_zero():
                out.append((q, l, h))
    return out
