"""Primitive towers: construction, validation, and the derivation.

A tower is C(params)(x)(t_1)...(t_n) where every t_i is a primitive
generator: its stated derivative lives strictly below level i and is
*not* itself a derivative there (checked by running the reduction while
the tower is built, level by level).  Variable indices are allocated
params first, then the base variable, then the generators, so an
element's top variable index is its minimal level.

The context is immutable once built except for internal memo caches
(associated pairs, mu/nu sequences, basis pairs, factorizations), whose
writes are serialized behind one lock; concurrent reductions against a
shared context are safe.
"""

import re
import threading

from .elements import FieldElement, ONE, ZERO, elem_from_value
from .errors import DuplicateNameError, SetupError, ZeroDenominatorError
from .intfactor import DEFAULT_LIMITS
from .parsing import parse_element, render_element
from .polys import vderiv

_NAME_OK = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


class TowerContext:
    def __init__(self, base, params, level_names, derivs, limits=None, debug=False):
        self.base = base
        self.params = tuple(params)
        self.level_names = tuple(level_names)
        self.nparams = len(self.params)
        self.nlevels = len(self.level_names)
        self.nvars = self.nparams + 1 + self.nlevels
        self._names = self.params + (base,) + self.level_names
        self._index = {n: i for i, n in enumerate(self._names)}
        self.derivs = dict(derivs)
        self.limits = limits or DEFAULT_LIMITS
        self.debug = debug
        self.lock = threading.RLock()
        self.assoc = {}          # level -> AssociatedPairs
        self.munu = {}           # level -> ([mu_0..], [None, nu_1..])
        self.basis_cache = {}    # (level, mode) -> [(u, v) FPoly pairs]
        self.factor_memo = {}

    # -- variables and levels -------------------------------------------

    def var_of_level(self, level):
        return self.nparams + level

    def level_of_var(self, var):
        return var - self.nparams

    @property
    def base_var(self):
        return self.nparams

    def var_index(self, name):
        return self._index[name]

    def var_name(self, index):
        return self._names[index]

    def level_of(self, f):
        """Minimal level of an element (0 for base-field and constants)."""
        return max(self.level_of_var(f.top_var()), 0)

    def is_constant(self, f):
        return f.top_var() < self.base_var

    def gen(self, level):
        """The generator t_level (level >= 1) or the base variable (0)."""
        return FieldElement.var(self.var_of_level(level))

    def symbols(self):
        return {n: FieldElement.var(i) for i, n in enumerate(self._names)}

    def names_map(self):
        return {i: n for i, n in enumerate(self._names)}

    # -- derivation -------------------------------------------------------

    def level_derivative(self, level):
        """Derivative of the level's generator (1 for the base variable)."""
        return self.derivs[self.var_of_level(level)]

    def derivative(self, f):
        """The tower derivation applied to an element."""
        if f.is_zero() or self.is_constant(f):
            return ZERO
        out = ZERO
        for var in sorted(f.variables()):
            dv = self.derivs.get(var, ZERO)
            if dv.is_zero():
                continue
            out = out + _partial(f, var) * dv
        return out

    def dt(self, f, level):
        """Derivation fixing the field below: t_level -> 1, all else -> 0."""
        return _partial(f, self.var_of_level(level))

    def kappa(self, f, level):
        """Coefficient-lifting derivation: the tower derivation applied to
        the coefficients of f as a fraction in t_level."""
        return self.derivative(f) - self.level_derivative(level) * self.dt(f, level)

    # -- parsing / rendering ----------------------------------------------

    def parse(self, text):
        return parse_element(text, self.symbols())

    def render(self, f, fmt="plain"):
        return render_element(f, self.names_map(), fmt)

    def to_json(self):
        names = self.names_map()
        return {
            "base": self.base,
            "params": list(self.params),
            "levels": [
                {"name": n,
                 "derivative": render_element(
                     self.derivs[self.var_of_level(i + 1)], names)}
                for i, n in enumerate(self.level_names)
            ],
        }


def _partial(f, var):
    dn = vderiv(f.num, var)
    dd = vderiv(f.den, var)
    n_el = elem_from_value(f.num)
    d_el = elem_from_value(f.den)
    return (elem_from_value(dn) * d_el - n_el * elem_from_value(dd)) / (d_el * d_el)


def build_tower(doc, limits=None, debug=False):
    """Validate a tower description and return a ready context.

    doc: {"base": name, "params": [names], "levels":
          [{"name": n, "derivative": expr}, ...]}.  Levels are validated
    bottom-up; each derivative may only mention strictly lower symbols
    and must have a nonzero remainder one level down.
    """
    base = doc.get("base", "x")
    params = list(doc.get("params", []))
    levels = doc.get("levels", [])
    seen = set()
    for name in params + [base] + [lv["name"] for lv in levels]:
        if not _NAME_OK.match(name or ""):
            raise SetupError(f"invalid symbol name {name!r}")
        if name in seen:
            raise DuplicateNameError(f"duplicate symbol {name!r}")
        seen.add(name)

    level_names = [lv["name"] for lv in levels]
    nparams = len(params)
    derivs = {i: ZERO for i in range(nparams)}
    derivs[nparams] = ONE
    ctx = TowerContext(base, params, level_names, derivs, limits=limits, debug=debug)

    # compile and check each level bottom-up; primitivity needs the
    # reduction machinery, imported here to keep module layering acyclic
    from .reduction import reduce_at
    from .basis import basis_element
    from .reduction import AssociatedPairs
    from .errors import NonPrimitiveError

    allowed = {p: FieldElement.var(i) for i, p in enumerate(params)}
    allowed[base] = FieldElement.var(nparams)
    for i, lv in enumerate(levels, start=1):
        expr = lv["derivative"]
        tprime = parse_element(expr, dict(allowed))
        if tprime.is_zero():
            raise NonPrimitiveError(i, lv["name"])
        var = ctx.var_of_level(i)
        ctx.derivs[var] = tprime
        rp = reduce_at(tprime, ctx, i - 1)
        if rp.r.is_zero():
            raise NonPrimitiveError(i, lv["name"])
        theta, c = basis_element(rp.r, ctx)
        ctx.assoc[i] = AssociatedPairs(lam=rp.g, phi_tp=rp.r, theta=theta, c=c)
        allowed[lv["name"]] = FieldElement.var(var)
    return ctx


def normalize(num, den=None, ctx=None):
    """Canonical element from a raw fraction of elements or values."""
    if den is None:
        den = ONE
    if isinstance(num, FieldElement) or isinstance(den, FieldElement):
        num = num if isinstance(num, FieldElement) else FieldElement(num)
        den = den if isinstance(den, FieldElement) else FieldElement(den)
        if den.is_zero():
            raise ZeroDenominatorError("zero denominator")
        return num / den
    return FieldElement(num, den)
