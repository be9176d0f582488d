"""Irreducible factorization over Q for the recursive dense values.

Univariate polynomials go through the classical route: squarefree
split (Yun), monic transformation, Berlekamp factorization modulo a
small good prime, quadratic Hensel lifting to a Landau-Mignotte bound,
and subset recombination.  Multivariate polynomials are reduced to the
univariate case by Kronecker substitution; candidate factors are mapped
back through the inverse substitution and verified by exact division.

Everything is deterministic: primes are tried in increasing order and
subsets are enumerated in a fixed order, so two runs on equal inputs
produce identical factor lists.
"""

from dataclasses import dataclass
from itertools import combinations
from math import isqrt

from .errors import ResourceLimitError
from .polys import (
    QONE,
    QZERO,
    canonical_key,
    exact_div,
    integer_primitive,
    is_q,
    mkpoly,
    qq,
    squarefree_decomposition,
    top_var,
    total_degree,
    value_from_terms,
    variables_of,
    vcoeffs,
    vdeg,
    vis_zero,
    vmul,
    vpow,
    vterms,
)


@dataclass(frozen=True)
class Limits:
    """Desk-scale resource caps; exceeding any raises ResourceLimitError."""

    max_univariate_degree: int = 128
    max_kronecker_degree: int = 6000
    max_candidates: int = 200000
    max_prime: int = 10000


DEFAULT_LIMITS = Limits()


# ----------------------------------------------------------------------
# GF(p) arithmetic on dense int lists (low -> high, trimmed)

def _trim(f):
    n = len(f)
    while n and f[n - 1] == 0:
        n -= 1
    del f[n:]
    return f


def _gf_red(f, p):
    return _trim([c % p for c in f])


def _gf_sub(a, b, p):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _gf_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _gf_divmod(a, b, p):
    a = a[:]
    if not b:
        raise ZeroDivisionError("gf division by zero")
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = (a[-1] * inv) % p
        k = len(a) - 1 - db
        q[k] = c
        for j, bj in enumerate(b):
            a[k + j] = (a[k + j] - c * bj) % p
        _trim(a)
    return _trim(q), a


def _gf_gcd(a, b, p):
    while b:
        a, b = b, _gf_divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _gf_xgcd(a, b, p):
    r0, r1 = a[:], b[:]
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _gf_sub(s0, _gf_mul(q, s1, p), p)
        t0, t1 = t1, _gf_sub(t0, _gf_mul(q, t1, p), p)
    inv = pow(r0[-1], p - 2, p)
    return ([(c * inv) % p for c in r0],
            [(c * inv) % p for c in s0],
            [(c * inv) % p for c in t0])


def _gf_pow_mod(a, e, f, p):
    r = [1]
    a = _gf_divmod(a, f, p)[1]
    while e:
        if e & 1:
            r = _gf_divmod(_gf_mul(r, a, p), f, p)[1]
        a = _gf_divmod(_gf_mul(a, a, p), f, p)[1]
        e >>= 1
    return r


def _gf_deriv(f, p):
    return _trim([(k * c) % p for k, c in enumerate(f)][1:])


def _primes():
    yield 2
    yield 3
    n = 5
    while True:
        for m in (n, n + 2):
            is_p = True
            i = 3
            while i * i <= m:
                if m % i == 0:
                    is_p = False
                    break
                i += 2
            if is_p:
                yield m
        n += 6


# ----------------------------------------------------------------------
# Berlekamp factorization of a monic squarefree polynomial mod p

def _berlekamp(f, p):
    n = len(f) - 1
    if n == 1:
        return [f]
    xp = _gf_pow_mod([0, 1], p, f, p)
    rows = []
    cur = [1]
    for _ in range(n):
        row = cur + [0] * (n - len(cur))
        rows.append(row[:n])
        cur = _gf_divmod(_gf_mul(cur, xp, p), f, p)[1]
    # nullspace of (Q - I)^T over GF(p); vectors v satisfy v^p = v mod f
    mat = [[(rows[j][i] - (1 if i == j else 0)) % p for j in range(n)] for i in range(n)]
    basis = _nullspace(mat, p)
    r = len(basis)
    if r == 1:
        return [f]
    factors = [f]
    for vec in basis:
        if len(factors) == r:
            break
        v = _trim(list(vec))
        for s in range(p):
            if len(factors) == r:
                break
            vs = _gf_sub(v, [s], p)
            new = []
            for g in factors:
                if len(g) - 1 <= 1:
                    new.append(g)
                    continue
                d = _gf_gcd(g, _gf_divmod(vs, g, p)[1] if len(vs) >= len(g) else vs, p)
                if d and 0 < len(d) - 1 < len(g) - 1:
                    new.append(d)
                    new.append(_gf_divmod(g, d, p)[0])
                else:
                    new.append(g)
            factors = new
    factors.sort(key=lambda g: (len(g), g))
    return factors


def _nullspace(mat, p):
    n = len(mat)
    m = [row[:] for row in mat]
    pivots = {}
    row = 0
    for col in range(n):
        sel = None
        for i in range(row, n):
            if m[i][col] % p:
                sel = i
                break
        if sel is None:
            continue
        m[row], m[sel] = m[sel], m[row]
        inv = pow(m[row][col], p - 2, p)
        m[row] = [(c * inv) % p for c in m[row]]
        for i in range(n):
            if i != row and m[i][col]:
                c = m[i][col]
                m[i] = [(a - c * b) % p for a, b in zip(m[i], m[row])]
        pivots[col] = row
        row += 1
    basis = []
    for col in range(n):
        if col in pivots:
            continue
        vec = [0] * n
        vec[col] = 1
        for pc, pr in pivots.items():
            vec[pc] = (-m[pr][col]) % p
        basis.append(vec)
    return basis


# ----------------------------------------------------------------------
# Hensel lifting (monic, quadratic) and Zassenhaus recombination

def _sym(c, m):
    c %= m
    return c - m if c > m // 2 else c


def _zm_red(f, m, sym=False):
    return _trim([(_sym(c, m) if sym else c % m) for c in f])


def _zm_mul(a, b, m):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % m
    return _trim(out)


def _zm_sub(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % m for i in range(n)])


def _zm_add(a, b, m):
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % m for i in range(n)])


def _zm_divmod_monic(a, b, m):
    a = a[:]
    db = len(b) - 1
    q = [0] * max(len(a) - db, 0)
    while a and len(a) - 1 >= db:
        c = a[-1] % m
        k = len(a) - 1 - db
        q[k] = c
        for j, bj in enumerate(b):
            a[k + j] = (a[k + j] - c * bj) % m
        _trim(a)
    return _trim(q), a


def _hensel_step(f, g, h, s, t, m):
    """One quadratic lift: modulus m -> m*m, all of f, g, h monic."""
    M = m * m
    e = _zm_sub(_zm_red(f, M), _zm_mul(g, h, M), M)
    q, r = _zm_divmod_monic(_zm_mul(s, e, M), h, M)
    g1 = _zm_add(g, _zm_add(_zm_mul(t, e, M), _zm_mul(q, g, M), M), M)
    h1 = _zm_add(h, r, M)
    b = _zm_sub(_zm_add(_zm_mul(s, g1, M), _zm_mul(t, h1, M), M), [1], M)
    c, d = _zm_divmod_monic(_zm_mul(s, b, M), h1, M)
    s1 = _zm_sub(s, d, M)
    t1 = _zm_sub(t, _zm_add(_zm_mul(t, b, M), _zm_mul(c, g1, M), M), M)
    return g1, h1, s1, t1


def _hensel_lift(f, facs, p, target):
    """Lift monic f = prod(facs) mod p to modulus target = p**(2**j)."""
    if len(facs) == 1:
        return [_zm_red(f, target)]
    k = len(facs) // 2
    g = [1]
    for fac in facs[:k]:
        g = _zm_mul(g, fac, p)
    h = [1]
    for fac in facs[k:]:
        h = _zm_mul(h, fac, p)
    _, s, t = _gf_xgcd(g, h, p)
    m = p
    while m < target:
        g, h, s, t = _hensel_step(f, g, h, s, t, m)
        m = m * m
    return (_hensel_lift(_zm_red(g, target), facs[:k], p, target)
            + _hensel_lift(_zm_red(h, target), facs[k:], p, target))


def _zz_divides(a, b):
    """Exact division b // a over Z for monic-ish int lists, or None."""
    if not a:
        return None
    b = b[:]
    da = len(a) - 1
    if len(b) - 1 < da:
        return None
    q = [0] * (len(b) - da)
    while b and len(b) - 1 >= da:
        if b[-1] % a[-1]:
            return None
        c = b[-1] // a[-1]
        k = len(b) - 1 - da
        q[k] = c
        for j, aj in enumerate(a):
            b[k + j] -= c * aj
        _trim(b)
    return q if not b else None


def _factor_monic_sqf_int(f, limits):
    """Irreducible monic integer factors of a monic squarefree int poly."""
    n = len(f) - 1
    if n <= 1:
        return [f]
    if n > limits.max_univariate_degree:
        raise ResourceLimitError(
            f"univariate degree {n} exceeds cap {limits.max_univariate_degree}")
    prime = None
    for p in _primes():
        if p > limits.max_prime:
            raise ResourceLimitError("no usable prime below cap for factorization")
        fp = _gf_red(f, p)
        if len(fp) - 1 != n:
            continue
        if len(_gf_gcd(fp, _gf_deriv(fp, p), p)) - 1 == 0:
            prime = p
            break
    p = prime
    modular = _berlekamp(_gf_red(f, p), p)
    if len(modular) == 1:
        return [f]
    height = max(abs(c) for c in f)
    bound = 2 * (1 << n) * (isqrt(n + 1) + 1) * height
    target = p
    while target <= 2 * bound:
        target = target * target
    lifted = _hensel_lift(_zm_red(f, target), modular, p, target)
    return _recombine(f, lifted, target, limits)


def _recombine(f, lifted, modulus, limits):
    result = []
    rem = f[:]
    idxs = list(range(len(lifted)))
    tries = 0
    s = 1
    while 2 * s <= len(idxs):
        found = False
        for combo in combinations(idxs, s):
            tries += 1
            if tries > limits.max_candidates:
                raise ResourceLimitError("factor recombination candidate cap hit")
            cand = [1]
            for i in combo:
                cand = _zm_mul(cand, lifted[i], modulus)
            cand = _zm_red(cand, modulus, sym=True)
            if cand[0] != 0 and rem[0] % cand[0] != 0:
                continue
            q = _zz_divides(cand, rem)
            if q is not None:
                result.append(cand)
                rem = q
                idxs = [i for i in idxs if i not in combo]
                found = True
                break
        if not found:
            s += 1
    if len(rem) - 1 > 0:
        result.append(rem)
    return result


# ----------------------------------------------------------------------
# Value-level entry points

def _intlist_from_value(v, var):
    return [int(c.numerator) for c in vcoeffs(v, var)]


def _value_from_intlist(coeffs, var):
    return mkpoly(var, [qq(c) for c in coeffs])


def _factor_sqf_univariate(g, var, limits):
    """g integer-primitive, positive lead, squarefree, deg >= 1."""
    if vdeg(g, var) == 1:
        return [g]
    f = _intlist_from_value(g, var)
    a = f[-1]
    if a != 1:
        # monic transform y = a*x: F(y) = a^(n-1) f(y/a)
        n = len(f) - 1
        F = [f[k] * a ** (n - 1 - k) for k in range(n + 1)]
    else:
        F = f
    monic_factors = _factor_monic_sqf_int(F, limits)
    if a == 1:
        return sorted((_value_from_intlist(G, var) for G in monic_factors),
                      key=canonical_key)
    out = []
    for G in monic_factors:
        back = [c * a ** j for j, c in enumerate(G)]
        val = _value_from_intlist(back, var)
        out.append(integer_primitive(val)[1])
    return sorted(out, key=canonical_key)


def _kronecker_pack(g, vars_sorted, weights, limits):
    image_deg = 0
    terms = {}
    for mono, q in vterms(g):
        e = 0
        exp = dict(mono)
        for v, w in zip(vars_sorted, weights):
            e += exp.get(v, 0) * w
        image_deg = max(image_deg, e)
        terms[e] = terms.get(e, QZERO) + q
    if image_deg > limits.max_kronecker_degree:
        raise ResourceLimitError(
            f"Kronecker image degree {image_deg} exceeds cap")
    out = [0] * (image_deg + 1)
    for e, q in terms.items():
        out[e] = int(q.numerator)
    return _trim(out)


def _kronecker_unpack(u, vars_sorted, bounds, weights):
    terms = []
    for e, c in enumerate(u):
        if c == 0:
            continue
        mono = []
        for v, b, w in zip(vars_sorted, bounds, weights):
            ev = (e // w) % (b + 1)
            if ev:
                mono.append((v, ev))
        terms.append((tuple(mono), qq(c)))
    return value_from_terms(terms)


def _factor_sqf_multivariate(g, limits):
    vars_sorted = sorted(variables_of(g))
    bounds = [vdeg(g, v) for v in vars_sorted]
    weights = [1]
    for b in bounds[:-1]:
        weights.append(weights[-1] * (b + 1))
    packed = _kronecker_pack(g, vars_sorted, weights, limits)
    image = _value_from_intlist(packed, vars_sorted[0])
    _, image_facs = factor_value(image, limits)
    pool = []
    for f, m in image_facs:
        pool.extend([f] * m)
    pool.sort(key=canonical_key)
    result = []
    rem = g
    tries = 0
    seen = set()
    s = 1
    while 2 * s <= len(pool) and not is_q(rem):
        found = False
        for combo in combinations(range(len(pool)), s):
            tries += 1
            if tries > limits.max_candidates:
                raise ResourceLimitError("Kronecker recombination candidate cap hit")
            cand_img = QONE
            for i in combo:
                cand_img = vmul(cand_img, pool[i])
            key = canonical_key(cand_img)
            if key in seen:
                continue
            seen.add(key)
            cand = _kronecker_unpack(
                _intlist_from_value(cand_img, vars_sorted[0]), vars_sorted, bounds, weights)
            cand = integer_primitive(cand)[1]
            if is_q(cand):
                continue
            q = exact_div(rem, cand)
            if q is not None:
                result.append(cand)
                rem = q
                pool = [f for i, f in enumerate(pool) if i not in combo]
                seen = set()
                found = True
                break
        if not found:
            s += 1
    if not is_q(rem):
        result.append(integer_primitive(rem)[1])
    return sorted(result, key=canonical_key)


def factor_value(v, limits=DEFAULT_LIMITS, memo=None):
    """Full irreducible factorization of a value over Q.

    Returns (unit, [(factor, multiplicity), ...]) with integer-primitive,
    positive-lead, pairwise distinct irreducible factors in canonical
    order; unit * prod(factor**mult) == v exactly.
    """
    if vis_zero(v):
        raise ZeroDivisionError("factorization of zero")
    key = v if memo is not None else None
    if memo is not None and key in memo:
        return memo[key]
    unit, p = integer_primitive(v)
    found = {}

    def _absorb(f, m):
        found[f] = found.get(f, 0) + m

    stack = [(p, 1)]
    while stack:
        cur, mult = stack.pop()
        if is_q(cur):
            continue  # rational drift is reconciled by the rebuild check
        var = top_var(cur)
        cont, pieces = squarefree_decomposition(cur, var)
        if not is_q(cont):
            stack.append((integer_primitive(cont)[1], mult))
        for piece, k in pieces:
            pvars = variables_of(piece)
            if len(pvars) == 1:
                facs = _factor_sqf_univariate(piece, next(iter(pvars)), limits)
            else:
                facs = _factor_sqf_multivariate(piece, limits)
            for f in facs:
                _absorb(f, mult * k)
    factors = sorted(found.items(), key=lambda fm: canonical_key(fm[0]))
    rebuilt = QONE
    for f, m in factors:
        rebuilt = vmul(rebuilt, vpow(f, m))
    drift = exact_div(p, rebuilt)
    if drift is None or not is_q(drift):
        raise AssertionError("factorization does not rebuild input")
    unit = unit * drift
    result = (unit, factors)
    if memo is not None:
        memo[key] = result
    return result
