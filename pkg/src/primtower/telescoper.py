"""Telescoper construction over C(x)(y) with one primitive generator.

The setup treats x as a constant parameter and y as the base variable;
the generator t carries two derivatives, one for each direction, with
commutation checked up front.  A telescoper of order m exists iff the
remainders of the first m+1 x-derivatives are linearly dependent over
C(x); the search walks m upward, mapping each remainder to coordinates
in the effective basis and looking for a kernel vector.  The certificate
comes for free from the stored reduction pairs.  Nonexistence beyond the
order bound is not decided; the denominator growth of the remainders is
reported as a diagnostic only.
"""

from dataclasses import dataclass, field

from .basis import decompose
from .elements import FieldElement, ONE, ZERO, elem_from_value
from .errors import CommutationError, SetupError
from .fieldpoly import element_as_fraction
from .linalg import nontrivial_kernel_vector
from .polys import integer_primitive, vdeg, vgcd, vlcm
from .reduction import OPERATOR, complete_reduce, remainder_split
from .tower import TowerContext, build_tower
from .elementary import constant_matrix


@dataclass
class BivariateSetup:
    ctx: TowerContext            # derivation is D_y; x lives in the constants
    dx_map: dict                 # var index -> FieldElement, the D_x table

    def dx(self, f):
        """The extended derivation D_x on the tower."""
        if f.is_zero():
            return ZERO
        from .tower import _partial
        out = ZERO
        for var in sorted(f.variables()):
            dv = self.dx_map.get(var, ZERO)
            if dv.is_zero():
                continue
            out = out + _partial(f, var) * dv
        return out


def build_setup(doc, limits=None, debug=False):
    """Validate a bivariate telescoping setup.

    doc is a tower description with exactly one level whose entry also
    carries "dx", the x-derivative of the generator (a polynomial in t
    of degree at most one); params must name exactly one parameter."""
    params = doc.get("params", [])
    levels = doc.get("levels", [])
    if len(params) != 1:
        raise SetupError("telescoping needs exactly one constant parameter")
    if len(levels) != 1:
        raise SetupError("telescoping supports exactly one generator")
    if "dx" not in levels[0]:
        raise SetupError("the generator needs a dx entry for the x-derivative")
    ctx = build_tower(doc, limits=limits, debug=debug)
    tvar = ctx.var_of_level(1)
    dx_t = ctx.parse(levels[0]["dx"])
    num, den = element_as_fraction(dx_t, tvar)
    if den.degree() != 0 or num.degree() > 1:
        raise SetupError("dx of the generator must be polynomial in t of degree < 2")
    xvar = 0
    dx_map = {xvar: ONE, ctx.base_var: ZERO, tvar: dx_t}
    setup = BivariateSetup(ctx=ctx, dx_map=dx_map)
    # commutation D_x(D_y t) = D_y(D_x t)
    dyt = ctx.level_derivative(1)
    if setup.dx(dyt) != ctx.derivative(dx_t):
        raise CommutationError("the two derivations do not commute on the generator")
    return setup


@dataclass
class Telescoper:
    order: int
    coefficients: list           # l_0..l_order, constants (elements of C(x))
    certificate: FieldElement

    def to_json(self, ctx):
        return {
            "order": self.order,
            "coefficients": [ctx.render(c) for c in self.coefficients],
            "certificate": ctx.render(self.certificate),
        }


@dataclass
class NoneUpTo:
    m_max: int
    denominator_degrees: list = field(default_factory=list)

    def to_json(self, ctx):
        return {
            "none_up_to": self.m_max,
            "remainder_denominator_degrees": self.denominator_degrees,
        }


def telescope(f, setup, m_max=6, mode=OPERATOR):
    """Smallest-order telescoper up to m_max, or NoneUpTo(m_max).

    Collects reduction pairs of successive x-derivatives, maps the
    remainders to effective-basis coordinates over C(x), and returns the
    first nontrivial relation; the certificate is the matching
    combination of the integrable parts."""
    ctx = setup.ctx
    gs = []
    rems = []
    coord_maps = []
    den_degrees = []
    cur = f
    for m in range(m_max + 1):
        rp = complete_reduce(cur, ctx, mode)
        gs.append(rp.g)
        rems.append(rp.r)
        coord_maps.append(decompose(rp.r, ctx))
        den_degrees.append(vdeg(rp.r.den, ctx.base_var))
        atoms = sorted({a for cm in coord_maps for a in cm}, key=repr)
        columns = [[cm.get(a, ZERO) for a in atoms] for cm in coord_maps]
        if not atoms:
            # every remainder is zero: the zero-order operator 1 telescopes
            sol = [ONE] + [ZERO] * m
        else:
            sol = nontrivial_kernel_vector(columns)
        if sol is not None:
            coeffs = _normalize_coeffs(sol, ctx)
            cert = ZERO
            for li, gi in zip(coeffs, gs):
                cert = cert + li * gi
            return Telescoper(order=m, coefficients=coeffs, certificate=cert)
        cur = setup.dx(cur)
    return NoneUpTo(m_max=m_max, denominator_degrees=den_degrees)


def _normalize_coeffs(sol, ctx):
    """Clear denominators and content: coefficients become coprime
    polynomials in the parameter with a positive-lead top coefficient."""
    den = None
    for c in sol:
        if not c.is_zero():
            den = c.den if den is None else vlcm(den, c.den)
    if den is None:
        return list(sol)
    cleared = [c * elem_from_value(den) for c in sol]
    content = None
    for c in cleared:
        if not c.is_zero():
            content = c.num if content is None else vgcd(content, c.num)
    out = [(FieldElement(c.num, content) if not c.is_zero() else ZERO)
           for c in cleared]
    top = next(c for c in reversed(out) if not c.is_zero())
    if integer_primitive(top.num)[0] < 0:
        out = [-c for c in out]
    return out


def certificate_identity(f, tel, setup):
    """Exact check: sum l_i D_x^i(f) - D_y(certificate) == 0."""
    ctx = setup.ctx
    acc = ZERO
    cur = f
    for li in tel.coefficients:
        acc = acc + li * cur
        cur = setup.dx(cur)
    return acc - ctx.derivative(tel.certificate) == ZERO


def residue_constancy(f, setup, mode=OPERATOR):
    """True iff the simple part of the remainder has all its residues
    algebraic over the constants; true guarantees a telescoper exists."""
    ctx = setup.ctx
    rp = complete_reduce(f, ctx, mode)
    if rp.r.is_zero():
        return True
    split = remainder_split(rp.r, ctx, check=False)
    s = split.s_by_level.get(1, ZERO)
    if s.is_zero():
        return True
    system = constant_matrix(s, [], ctx, 1, mode)
    _, ok = system.solve() if len(system) else (None, True)
    return ok
