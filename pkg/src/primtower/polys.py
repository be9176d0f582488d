"""Recursive dense multivariate polynomials over the rationals.

A *value* is either a rational (see :mod:`primtower.rationals`) or a
:class:`Poly`.  A ``Poly`` is a dense coefficient vector in its top
variable; every coefficient is again a value whose variables are
strictly smaller.  Variables are plain integers; the tower module maps
names onto indices (parameters < base variable < generators).

Invariants kept by the ``mkpoly`` constructor:

* the highest coefficient is nonzero,
* a vector of length one collapses to its only coefficient, so a value
  never mentions a variable with degree zero at the top.

The gcd is a primitive polynomial remainder sequence with recursive
content extraction, which keeps coefficient growth tame at the sizes
this package targets.
"""

from .rationals import QZERO, QONE, is_q, qq, qgcd, qsign

NEG_INF = -1  # degree of the zero polynomial in the helpers below


class Poly:
    __slots__ = ("var", "coeffs", "_hash")

    def __init__(self, var, coeffs):
        self.var = var
        self.coeffs = coeffs
        self._hash = None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Poly):
            return False
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.var, self.coeffs))
        return self._hash

    def __repr__(self):
        return f"Poly(v{self.var}, {list(self.coeffs)!r})"


def mkpoly(var, coeffs):
    """Normalize a coefficient list into a canonical value."""
    n = len(coeffs)
    while n > 0 and vis_zero(coeffs[n - 1]):
        n -= 1
    if n == 0:
        return QZERO
    if n == 1:
        return coeffs[0]
    return Poly(var, tuple(coeffs[:n]))


def vis_zero(v):
    return is_q(v) and v == 0


def top_var(v):
    return v.var if isinstance(v, Poly) else -1


def vcoeffs(v, var):
    """Dense coefficient list of ``v`` with respect to ``var`` (which must
    be >= every variable of ``v``)."""
    if isinstance(v, Poly) and v.var == var:
        return list(v.coeffs)
    return [v]


def vdeg(v, var):
    if vis_zero(v):
        return NEG_INF
    tv = top_var(v)
    if tv < var:
        return 0
    if tv == var:
        return len(v.coeffs) - 1
    return max(vdeg(c, var) for c in v.coeffs if not vis_zero(c))

def vcoeff(v, var, k):
    cs = vcoeffs(v, var)
    return cs[k] if k < len(cs) else QZERO


def vlc(v, var):
    if vis_zero(v):
        return QZERO
    return vcoeffs(v, var)[-1]


def vadd(a, b):
    if is_q(a) and is_q(b):
        return a + b
    va, vb = top_var(a), top_var(b)
    if va == vb:
        ca, cb = list(a.coeffs), list(b.coeffs)
        if len(ca) < len(cb):
            ca, cb = cb, ca
        out = ca[:]
        for i, c in enumerate(cb):
            out[i] = vadd(out[i], c)
        return mkpoly(va, out)
    if va > vb:
        out = list(a.coeffs)
        out[0] = vadd(out[0], b)
        return mkpoly(va, out)
    out = list(b.coeffs)
    out[0] = vadd(a, out[0])
    return mkpoly(vb, out)


def vneg(a):
    if is_q(a):
        return -a
    return Poly(a.var, tuple(vneg(c) for c in a.coeffs))


def vsub(a, b):
    return vadd(a, vneg(b))


def vscale(a, q):
    if q == 0:
        return QZERO
    if q == 1:
        return a
    if is_q(a):
        return a * q
    return Poly(a.var, tuple(vscale(c, q) for c in a.coeffs))


def vmul(a, b):
    if is_q(a):
        return vscale(b, a)
    if is_q(b):
        return vscale(a, b)
    va, vb = a.var, b.var
    if va > vb:
        return Poly(va, tuple(vmul(c, b) for c in a.coeffs))
    if vb > va:
        return Poly(vb, tuple(vmul(a, c) for c in b.coeffs))
    ca, cb = a.coeffs, b.coeffs
    out = [QZERO] * (len(ca) + len(cb) - 1)
    for i, ci in enumerate(ca):
        if vis_zero(ci):
            continue
        for j, cj in enumerate(cb):
            if vis_zero(cj):
                continue
            out[i + j] = vadd(out[i + j], vmul(ci, cj))
    return mkpoly(va, out)


def vpow(a, n):
    if n < 0:
        raise ValueError("negative power of a polynomial value")
    r = QONE
    base = a
    while n:
        if n & 1:
            r = vmul(r, base)
        base = vmul(base, base) if n > 1 else base
        n >>= 1
    return r


def vmonomial(var, k, c=QONE):
    """c * var**k as a value."""
    if k == 0 or vis_zero(c):
        return c
    return mkpoly(var, [QZERO] * k + [c])


def vshift(v, var, k):
    """v * var**k."""
    if k == 0 or vis_zero(v):
        return v
    out = [QZERO] * k + vcoeffs(v, var) if top_var(v) <= var else None
    if out is None:
        return vmul(v, vmonomial(var, k))
    return mkpoly(var, out)


def vderiv(v, var):
    """Formal partial derivative with respect to ``var``."""
    if is_q(v):
        return QZERO
    if v.var == var:
        out = [vscale(c, qq(k)) for k, c in enumerate(v.coeffs)][1:]
        return mkpoly(var, out)
    if v.var < var:
        return QZERO
    return mkpoly(v.var, [vderiv(c, var) for c in v.coeffs])


def vsubst(v, var, repl):
    """Substitute ``repl`` (a value) for ``var``."""
    if is_q(v):
        return v
    if v.var == var:
        acc = QZERO
        for c in reversed(v.coeffs):
            acc = vadd(vmul(acc, repl), c)
        return acc
    if v.var < var:
        return v
    return mkpoly(v.var, [vsubst(c, var, repl) for c in v.coeffs])


def _qleaves(v, out):
    if is_q(v):
        out.append(v)
    else:
        for c in v.coeffs:
            _qleaves(c, out)


def qcontent(v):
    """Nonnegative rational c with v/c integer and content-free."""
    leaves = []
    _qleaves(v, leaves)
    g = QZERO
    for q in leaves:
        g = qgcd(g, q)
    return g


def lead_q(v):
    """The recursively-leading rational coefficient."""
    while isinstance(v, Poly):
        v = v.coeffs[-1]
    return v


def signed_content(v):
    """Content carrying the sign of the leading rational."""
    c = qcontent(v)
    return -c if qsign(lead_q(v)) < 0 else c


def integer_primitive(v):
    """(c, p) with v = c * p, p integer-coefficient, primitive, positive lead."""
    if vis_zero(v):
        return QONE, QZERO
    c = signed_content(v)
    return c, vscale(v, 1 / c)


def vcontent_wrt(v, var):
    """gcd of the coefficients of v as a polynomial in ``var``."""
    g = QZERO
    for c in vcoeffs(v, var):
        g = vgcd(g, c)
        if is_q(g) and g == 1:
            break
    return g


def exact_div(a, b):
    """Division in Q[vars]; returns None when b does not divide a."""
    if vis_zero(a):
        return QZERO
    if is_q(b):
        if b == 0:
            raise ZeroDivisionError("division by zero value")
        return vscale(a, 1 / b)
    vb = b.var
    ta = top_var(a)
    if ta < vb:
        return None
    if ta > vb:
        out = []
        for c in a.coeffs:
            q = exact_div(c, b)
            if q is None:
                return None
            out.append(q)
        return mkpoly(ta, out)
    ac = vcoeffs(a, vb)
    bc = b.coeffs
    db = len(bc) - 1
    if len(ac) - 1 < db:
        return None
    out = [QZERO] * (len(ac) - db)
    for k in range(len(ac) - 1, db - 1, -1):
        c = ac[k]
        if vis_zero(c):
            continue
        q = exact_div(c, bc[-1])
        if q is None:
            return None
        out[k - db] = q
        for j, bj in enumerate(bc):
            ac[k - db + j] = vsub(ac[k - db + j], vmul(q, bj))
    for c in ac[:db]:
        if not vis_zero(c):
            return None
    return mkpoly(vb, out)


def prem(a, b, var):
    """Pseudo-remainder of a by b with respect to ``var``."""
    db = vdeg(b, var)
    lb = vlc(b, var)
    r = a
    dr = vdeg(r, var)
    while not vis_zero(r) and dr >= db:
        lr = vlc(r, var)
        r = vsub(vmul(r, lb), vmul(vshift(b, var, dr - db), lr))
        ndr = vdeg(r, var)
        if ndr >= dr:  # top term must cancel
            raise AssertionError("pseudo-division failed to reduce degree")
        dr = ndr
    return r


def vgcd(a, b):
    """Canonical gcd in Q[vars] with content semantics on rationals.

    The result has positive leading rational; for two rationals it is the
    rational content-gcd, for polynomials an integer-primitive polynomial
    times the content-gcd of the inputs' contents.
    """
    if vis_zero(a):
        return _poscanon(b)
    if vis_zero(b):
        return _poscanon(a)
    if is_q(a) and is_q(b):
        return qgcd(a, b)
    var = max(top_var(a), top_var(b))
    ca = vcontent_wrt(a, var)
    cb = vcontent_wrt(b, var)
    gc = vgcd(ca, cb)
    pa = exact_div(a, ca)
    pb = exact_div(b, cb)
    if vdeg(pa, var) == 0 or vdeg(pb, var) == 0:
        return _poscanon(gc)
    if vdeg(pa, var) < vdeg(pb, var):
        pa, pb = pb, pa
    while True:
        r = prem(pa, pb, var)
        if vis_zero(r):
            break
        r = exact_div(r, vcontent_wrt(r, var))
        if vdeg(r, var) == 0:
            return _poscanon(gc)
        pa, pb = pb, r
    gp = exact_div(pb, vcontent_wrt(pb, var))
    return _poscanon(vmul(gc, gp))


def _poscanon(v):
    if vis_zero(v):
        return QZERO
    return vneg(v) if qsign(lead_q(v)) < 0 else v


def vlcm(a, b):
    if vis_zero(a) or vis_zero(b):
        return QZERO
    return _poscanon(exact_div(vmul(a, b), vgcd(a, b)))


def squarefree_decomposition(v, var):
    """Yun's algorithm on the ``var``-primitive part of ``v``.

    Returns (content, [(factor, multiplicity), ...]) with integer-primitive
    positive-lead factors of positive degree in ``var``; content collects
    everything of degree zero in ``var`` (including the rational unit).
    """
    if vis_zero(v):
        raise ZeroDivisionError("squarefree decomposition of zero")
    cont = vcontent_wrt(v, var)
    f = exact_div(v, cont)
    if vdeg(f, var) <= 0:
        return vmul(cont, f), []
    out = []
    df = vderiv(f, var)
    u = vgcd(f, df)
    p = exact_div(f, u)
    q = exact_div(df, u)
    k = 1
    while True:
        z = vsub(q, vderiv(p, var))
        if vis_zero(z):
            out.append((p, k))
            break
        h = vgcd(p, z)
        if vdeg(h, var) > 0:
            out.append((h, k))
        p = exact_div(p, h)
        q = exact_div(z, h)
        k += 1
    # fold the rational units of the pieces back into the content
    norm = []
    for g, m in out:
        c, gp = integer_primitive(g)
        cont = vmul(cont, vpow(c, m)) if c != 1 else cont
        norm.append((gp, m))
    rebuilt = cont
    for g, m in norm:
        rebuilt = vmul(rebuilt, vpow(g, m))
    # rebuilt equals v; any rational drift would indicate a logic error
    cont = vmul(cont, _ratio_unit(v, rebuilt))
    return cont, norm


def _ratio_unit(v, rebuilt):
    if v == rebuilt:
        return QONE
    num = exact_div(v, rebuilt)
    if num is None or not is_q(num):
        raise AssertionError("squarefree decomposition does not rebuild input")
    return num


def resultant(a, b, var):
    """Resultant via Bareiss elimination on the Sylvester matrix."""
    if vis_zero(a) or vis_zero(b):
        return QZERO
    ac = vcoeffs(a, var)
    bc = vcoeffs(b, var)
    m, n = len(ac) - 1, len(bc) - 1
    if m == 0:
        return vpow(ac[0], n)
    if n == 0:
        return vpow(bc[0], m)
    size = m + n
    rows = []
    for i in range(n):
        row = [QZERO] * size
        for j, c in enumerate(reversed(ac)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [QZERO] * size
        for j, c in enumerate(reversed(bc)):
            row[i + j] = c
        rows.append(row)
    sign = 1
    prev = QONE
    for k in range(size - 1):
        if vis_zero(rows[k][k]):
            for i in range(k + 1, size):
                if not vis_zero(rows[i][k]):
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return QZERO
        piv = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = vsub(vmul(rows[i][j], piv), vmul(rows[i][k], rows[k][j]))
                rows[i][j] = exact_div(num, prev)
            rows[i][k] = QZERO
        prev = piv
    det = rows[size - 1][size - 1]
    return vneg(det) if sign < 0 else det


def total_degree(v):
    if is_q(v):
        return 0 if v != 0 else NEG_INF
    best = NEG_INF
    for k, c in enumerate(v.coeffs):
        if vis_zero(c):
            continue
        d = total_degree(c)
        if d + k > best:
            best = d + k
    return best


def variables_of(v, acc=None):
    if acc is None:
        acc = set()
    if isinstance(v, Poly):
        acc.add(v.var)
        for c in v.coeffs:
            variables_of(c, acc)
    return acc


def canonical_key(v):
    """Total order on values: deterministic, used to fix factor order."""
    return (total_degree(v), top_var(v), _serialize(v))


def _serialize(v):
    if is_q(v):
        return (0, int(v.numerator), int(v.denominator))
    return (1, v.var, tuple(_serialize(c) for c in v.coeffs))


def vterms(v):
    """Iterate ((var, exp) pairs sorted descending, rational coeff)."""
    out = []
    _vterms(v, (), out)
    return out


def _vterms(v, mono, out):
    if is_q(v):
        if v != 0:
            out.append((mono, v))
        return
    for k, c in enumerate(v.coeffs):
        if vis_zero(c):
            continue
        _vterms(c, ((v.var, k),) + mono if k else mono, out)


def value_from_terms(terms):
    """Inverse of :func:`vterms`: terms is an iterable of (monomial, q)."""
    acc = QZERO
    for mono, q in terms:
        m = q
        for var, e in sorted(mono):
            m = vmonomial(var, e, m)
        acc = vadd(acc, m)
    return acc
