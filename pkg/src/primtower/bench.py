"""Benchmark harness over the fixed three-log tower.

All integrands are derivatives by construction: a random polynomial p is
drawn per suite profile and the integrand is p'; reducing it must give
remainder zero and an integrable part differing from p by a constant.
Four suite profiles vary where the density lives (the last generator,
rational coefficients, total degree across generators, or a plain dense
polynomial); the size parameter scales the profile's degree.  Rows carry
wall-clock millis, which are reported and never asserted.
"""

import csv
import io
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .elements import FieldElement, ZERO, elem_from_value
from .errors import InvalidSuiteError
from .polys import qq, value_from_terms
from .reduction import OPERATOR, complete_reduce
from .tower import build_tower

CSV_COLUMNS = ["suite", "size", "seed", "index", "verified",
               "remainder_zero", "millis", "mode"]


def bench_tower(limits=None):
    """log x, log(x+1), and log(log x) over Q(x)."""
    return build_tower({
        "base": "x",
        "levels": [
            {"name": "t1", "derivative": "1/x"},
            {"name": "t2", "derivative": "1/(x+1)"},
            {"name": "t3", "derivative": "1/(x*t1)"},
        ],
    }, limits=limits)


@dataclass(frozen=True)
class BenchSuite:
    suite: int
    size: int
    seed: int
    count: int = 3

    def __post_init__(self):
        if self.suite not in (1, 2, 3, 4):
            raise InvalidSuiteError(f"suite must be 1..4, got {self.suite}")


def _rand_poly(rng, vars_, total_deg, terms):
    """Sparse random integer polynomial, nonzero."""
    seen = {}
    for _ in range(terms):
        mono = []
        budget = total_deg
        for v in vars_:
            e = rng.randint(0, budget)
            budget -= e
            if e:
                mono.append((v, e))
        seen[tuple(mono)] = qq(rng.randint(-9, 9) or 1)
    val = value_from_terms(seen.items())
    if val == qq(0):
        return qq(1)
    return val


def _rand_ratio(rng, vars_, deg, terms):
    num = _rand_poly(rng, vars_, deg, terms)
    den = _rand_poly(rng, vars_, deg, terms)
    return elem_from_value(num) / elem_from_value(den)


def generate_suite(spec, ctx=None):
    """Reproducible integrands: [(integrand, antiderivative), ...]."""
    ctx = ctx or bench_tower()
    rng = random.Random((spec.suite, spec.size, spec.seed))
    x, t1, t2, t3 = (ctx.base_var, ctx.var_of_level(1),
                     ctx.var_of_level(2), ctx.var_of_level(3))
    out = []
    for _ in range(spec.count):
        if spec.suite == 1:
            # dense in the last generator, sparse degree-5 coefficients
            p = ZERO
            for k in range(spec.size + 1):
                p = p + _rand_ratio(rng, (x, t1, t2), 5, 3) * ctx.gen(3) ** k
        elif spec.suite == 2:
            # coefficients are quotients of linear polynomials
            p = ZERO
            for k in range(spec.size + 1):
                p = p + _rand_ratio(rng, (x, t1, t2), 1, 3) * ctx.gen(3) ** k
        elif spec.suite == 3:
            # total degree across the generators, Q(x) coefficients
            p = ZERO
            for _ in range(2 * spec.size + 1):
                e1 = rng.randint(0, spec.size)
                e2 = rng.randint(0, spec.size - e1)
                e3 = spec.size - e1 - e2
                term = (_rand_ratio(rng, (x,), 5, 3)
                        * ctx.gen(1) ** e1 * ctx.gen(2) ** e2 * ctx.gen(3) ** e3)
                p = p + term
        else:
            # plain dense polynomial in everything
            p = elem_from_value(_rand_poly(rng, (x, t1, t2, t3),
                                           spec.size, 4 * spec.size + 4))
        if p.is_zero():
            p = ctx.gen(3)
        out.append((ctx.derivative(p), p))
    return out


def run_bench(spec, ctx=None, mode=OPERATOR, parallel=False):
    """Reduce every suite integrand and verify it is a derivative."""
    ctx = ctx or bench_tower()
    items = generate_suite(spec, ctx)

    def one(args):
        idx, (integrand, p) = args
        t0 = time.perf_counter()
        rp = complete_reduce(integrand, ctx, mode)
        millis = round(1000 * (time.perf_counter() - t0), 3)
        remainder_zero = rp.r.is_zero()
        verified = remainder_zero and ctx.derivative(rp.g) + rp.r == integrand
        return {
            "suite": spec.suite, "size": spec.size, "seed": spec.seed,
            "index": idx, "verified": verified,
            "remainder_zero": remainder_zero, "millis": millis, "mode": mode,
        }

    if parallel:
        with ThreadPoolExecutor(max_workers=4) as pool:
            rows = list(pool.map(one, enumerate(items)))
    else:
        rows = [one(a) for a in enumerate(items)]
    return rows


def rows_to_csv(rows):
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS)
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def rows_to_markdown(rows):
    head = "| " + " | ".join(CSV_COLUMNS) + " |"
    sep = "|" + "---|" * len(CSV_COLUMNS)
    lines = [head, sep]
    for row in rows:
        lines.append("| " + " | ".join(str(row[c]) for c in CSV_COLUMNS) + " |")
    return "\n".join(lines)
