"""Arbitrary-precision rational backend.

gmpy2 is used when available (it is markedly faster for the deep gcd
chains the reduction runs on); otherwise the stdlib ``fractions`` module
is a drop-in replacement.  Everything above this module only touches the
helpers defined here.
"""

try:
    from gmpy2 import mpq as _mpq, mpz as _mpz, gcd as _zgcd

    QType = type(_mpq(0))

    def qq(a=0, b=1):
        return _mpq(a, b)

    def _intgcd(a, b):
        return int(_zgcd(_mpz(a), _mpz(b)))

except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _Fraction
    from math import gcd as _mathgcd

    QType = _Fraction

    def qq(a=0, b=1):
        return _Fraction(a, b)

    def _intgcd(a, b):
        return _mathgcd(a, b)


QZERO = qq(0)
QONE = qq(1)


def is_q(v):
    return isinstance(v, QType)


def qnum(q):
    return int(q.numerator)


def qden(q):
    return int(q.denominator)


def qgcd(a, b):
    """Content-style gcd of two rationals: gcd(a,b) divides both with
    rational quotients that are coprime integers.  gcd(0, 0) = 0."""
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    na, da = qnum(a), qden(a)
    nb, db = qnum(b), qden(b)
    return qq(_intgcd(na * db, nb * da), da * db)


def qlcm(a, b):
    if a == 0 or b == 0:
        return QZERO
    return abs(a * b) / qgcd(a, b)


def qsign(q):
    if q > 0:
        return 1
    if q < 0:
        return -1
    return 0


def q_to_str(q):
    n, d = qnum(q), qden(q)
    return str(n) if d == 1 else f"{n}/{d}"
