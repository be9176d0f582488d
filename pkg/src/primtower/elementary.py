"""Elementary integrability over the tower and integral assembly.

The decision procedure: reduce, split the remainder and each level's
associated remainder into base + polynomial + simple components, build
one exact linear system (residue-constancy rows from the constant
matrix plus coordinate-matching rows for the polynomial components) and
solve it over the constants.  Inconsistency refutes elementary
integrability; a solution rewrites the remainder so that the base part
integrates over C(x) and the simple parts integrate into logarithms via
resultants.  Residue polynomials that do not split over the constants
yield formal root-sum terms whose derivative identity is still checked
symbolically through traces, so the output stays exact without algebraic
numbers.
"""

from dataclasses import dataclass, field

from .basis import decompose
from .elements import FieldElement, ONE, ZERO, elem_from_value
from .errors import NotSimpleError
from .fieldpoly import FPoly, element_as_fraction, fpoly_factor, fpoly_gcd, invert_mod, xgcd
from .hermite import phi0_reduce
from .linalg import LinearSystem, solve_affine
from .polys import QONE, qq, resultant, vdeg, vis_zero
from .rationals import qden, qnum
from .reduction import OPERATOR, complete_reduce, reduce_at, remainder_split


# ----------------------------------------------------------------------
# Residue criterion rows

def _simple_parts(f, ctx, level):
    """Monic denominator and numerator of a simple element at a level."""
    var = ctx.var_of_level(level)
    num, den = element_as_fraction(f, var)
    if num.degree() >= den.degree():
        raise NotSimpleError("element is not proper at its level")
    return num, den


def constant_matrix(f, gs, ctx, level, mode=OPERATOR):
    """Rows over the constants whose solvability in (c_1..c_l) is
    equivalent to all residues of f - sum c_j g_j lying in the algebraic
    closure of the constant field.

    Implementation runs the residue-derivative computation once per slot
    (it is linear in the inputs) and equates basis coordinates."""
    var = ctx.var_of_level(level)
    inputs = [f] + list(gs)
    q = FPoly.const(var, ONE)
    for h in inputs:
        if h.is_zero():
            continue
        num, den = _simple_parts(h, ctx, level)
        g = fpoly_gcd(q, den)
        q = q * den.divmod(g)[0]
    if q.degree() == 0:
        return LinearSystem([], [], [f"z{j+1}" for j in range(len(gs))])
    # q is normal: gcd(q, q') = gcd(q, D_t q) = 1
    qprime = _ext_fderiv(q, ctx, level)
    dtq = q.formal_derivative()
    u = invert_mod(qprime.rem(q), q)
    v = invert_mod(dtq, q)
    kq = _kappa_fp(q, ctx, level)
    rs = []
    for h in inputs:
        if h.is_zero():
            rs.append(FPoly.zero(var))
            continue
        num, den = _simple_parts(h, ctx, level)
        p = num * q.divmod(den)[0]
        pu = (p * u).rem(q)
        # residue beta at a root alpha of q is (pu)(alpha); beta' = w(alpha)
        w = _kappa_fp(pu, ctx, level) - (_dt_only(pu) * v * kq)
        rs.append(w.rem(q))
    atoms = set()
    per_input = []
    for w in rs:
        coords = {}
        for k in range(len(w.coeffs)):
            c = w.coeff(k)
            if c.is_zero():
                continue
            for theta, cc in decompose(c, ctx).items():
                coords[(k, theta)] = coords.get((k, theta), ZERO) + cc
        per_input.append(coords)
        atoms.update(coords.keys())
    rows = []
    rhs = []
    for key in sorted(atoms, key=lambda kt: (kt[0], repr(kt[1]))):
        # w_f - sum c_j w_gj vanishes mod q iff every coordinate row holds
        rows.append([per_input[j + 1].get(key, ZERO) for j in range(len(gs))])
        rhs.append(per_input[0].get(key, ZERO))
    return LinearSystem(rows, rhs, [f"z{j+1}" for j in range(len(gs))])


def _kappa_fp(fp, ctx, level):
    """Coefficient-lifting derivation on a polynomial in t_level."""
    return fp.map_coeffs(ctx.derivative)


def _dt_only(fp):
    return fp.formal_derivative()


def _ext_fderiv(fp, ctx, level):
    return _kappa_fp(fp, ctx, level) + fp.formal_derivative().scale(
        ctx.level_derivative(level))


# ----------------------------------------------------------------------
# Logarithmic parts

@dataclass(frozen=True)
class LogTerm:
    residue: FieldElement      # constant
    argument: FieldElement     # tower element

    def derivative(self, ctx):
        return self.residue * ctx.derivative(self.argument) / self.argument


@dataclass(frozen=True)
class RootSum:
    """sum over roots z of res_poly of z * log(argument(z, t))."""

    res_poly: object           # monic FPoly in a fresh variable over C
    argument: object           # FPoly in t with coefficients in C[z]/(res_poly)

    def derivative(self, ctx, level):
        """Trace of z * argument' / argument over the roots; exact."""
        zvar = self.res_poly.var
        rho = self.res_poly
        garg = self.argument
        hel = (FieldElement.var(zvar) * _ext_fderiv(garg, ctx, level).to_element()
               / garg.to_element())
        if hel.top_var() < zvar:
            hbar = FPoly.const(zvar, hel)
        else:
            hnum, hden = element_as_fraction(hel, zvar)
            hbar = (hnum * _inv_mod_rho_poly(hden, rho)).rem(rho)
        psums = _power_sums(rho, len(hbar.coeffs))
        out = ZERO
        for k in range(len(hbar.coeffs)):
            out = out + hbar.coeff(k) * psums[k]
        return out


def _power_sums(rho, upto):
    """Newton power sums p_0..p_{upto-1} of the roots of monic rho."""
    n = int(rho.degree())

    def a(j):  # coefficient of z^j, zero below the constant term
        return rho.coeff(j) if j >= 0 else ZERO

    p = [FieldElement.const(n)]
    for k in range(1, max(upto, 1)):
        acc = -(qq(k) * a(n - k)) if k <= n else ZERO
        for i in range(1, min(k - 1, n) + 1):
            acc = acc - a(n - i) * p[k - i]
        p.append(acc)
    return p[:upto]


def rothstein_trager(s, ctx, level, zvar=None, mode=OPERATOR):
    """Logarithmic integral of a simple element with constant residues.

    Returns (log_terms, root_sums); residues are the roots of the monic
    resultant res_t(num - z * den', den) whose irreducible factors over
    the constants either split (explicit logarithms) or stay formal."""
    if s.is_zero():
        return [], []
    num, den = _simple_parts(s, ctx, level)
    if fpoly_gcd(den, _ext_fderiv(den, ctx, level)).degree() != 0:
        raise NotSimpleError("denominator is not normal")
    if zvar is None:
        zvar = ctx.nvars  # fresh variable above every tower generator
    var = ctx.var_of_level(level)
    dprime = _ext_fderiv(den, ctx, level)
    znum, zden = _clear_to_values(num - dprime.scale(FieldElement.var(zvar)), var)
    bnum, bden = _clear_to_values(den, var)
    res = resultant(znum, bnum, var)
    res_fp = FPoly.from_value(res, zvar) if not vis_zero(res) else FPoly.zero(zvar)
    if res_fp.is_zero() or res_fp.degree() == 0:
        raise AssertionError("resultant degenerated on a simple input")
    _, rfactors = fpoly_factor(res_fp, ctx.limits, ctx.factor_memo)
    log_terms = []
    root_sums = []
    for rho, _m in rfactors:
        if not all(ctx.is_constant(c) for c in rho.coeffs):
            raise NotSimpleError("resultant factor has non-constant residues")
        if rho.degree() == 1:
            beta = -rho.coeff(0)
            if beta.is_zero():
                continue
            arg = fpoly_gcd(num - dprime.scale(beta), den)
            log_terms.append(LogTerm(residue=beta, argument=arg.to_element()))
        else:
            garg = _gcd_over_extension(num, dprime, den, rho, zvar)
            root_sums.append(RootSum(res_poly=rho, argument=garg))
    return log_terms, root_sums


def _clear_to_values(fp, var):
    n, d = fp.to_value_pair()
    return n, d


def _gcd_over_extension(num, dprime, den, rho, zvar):
    """gcd(num - z*den', den) computed in (C[z]/rho)[t], returned as an
    FPoly in t with coefficients reduced modulo rho."""
    z = FieldElement.var(zvar)
    a = num - dprime.scale(z)
    b = den

    def red(fp):
        return fp.map_coeffs(lambda c: _mod_rho(c, rho, zvar))

    a, b = red(a), red(b)
    while not b.is_zero():
        lead_inv = _inv_mod_rho(b.lc(), rho, zvar)
        bm = red(b.scale(lead_inv))
        r = a
        while not r.is_zero() and r.degree() >= bm.degree():
            r = red(r - bm.shift(int(r.degree() - bm.degree())).scale(r.lc()))
        a, b = bm, r
    return a


def _mod_rho(c, rho, zvar):
    if c.top_var() < zvar:
        return c
    n, d = element_as_fraction(c, zvar)
    dinv = _inv_mod_rho_poly(d, rho)
    return (n * dinv).rem(rho).to_element()


def _inv_mod_rho(c, rho, zvar):
    if c.top_var() < zvar:
        return c.inverse()
    n, d = element_as_fraction(c, zvar)
    ninv = _inv_mod_rho_poly(n, rho)
    return (d * ninv).rem(rho).to_element()


def _inv_mod_rho_poly(fp, rho):
    g, s, _ = xgcd(fp.rem(rho) if fp.degree() >= rho.degree() else fp, rho)
    if g.degree() != 0:
        raise AssertionError("non-invertible element modulo an irreducible")
    return s


# ----------------------------------------------------------------------
# The decision procedure

@dataclass
class ElementaryIntegral:
    status: str                       # "infield" | "elementary"
    infield: FieldElement
    log_terms: list = field(default_factory=list)
    root_sums: list = field(default_factory=list)
    solution: list = field(default_factory=list)
    system: LinearSystem = None
    rootsum_levels: dict = field(default_factory=dict)

    def derivative(self, ctx):
        out = ctx.derivative(self.infield)
        for lt in self.log_terms:
            out = out + lt.derivative(ctx)
        for rs_id, rs in enumerate(self.root_sums):
            out = out + rs.derivative(ctx, self.rootsum_levels[rs_id])
        return out

    def render(self, ctx, fmt="plain"):
        parts = []
        if not self.infield.is_zero():
            parts.append(ctx.render(self.infield, fmt))
        for lt in self.log_terms:
            res = ctx.render(lt.residue, fmt)
            arg = ctx.render(lt.argument, fmt)
            if fmt == "latex":
                term = f"\\log\\left({arg}\\right)"
                parts.append(term if lt.residue.is_one() else f"{res}\\,{term}")
            else:
                term = f"log({arg})"
                parts.append(term if lt.residue.is_one() else f"{res}*{term}")
        names = dict(ctx.names_map())
        for rs in self.root_sums:
            names[rs.res_poly.var] = "z"
            from .parsing import render_element
            rho = render_element(rs.res_poly.to_element(), names, fmt)
            arg = render_element(rs.argument.to_element(), names, fmt)
            if fmt == "latex":
                parts.append(
                    f"\\sum_{{z:\\,{rho}=0}} z\\,\\log\\left({arg}\\right)")
            else:
                parts.append(f"RootSum(z: {rho} = 0, z*log({arg}))")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out

    def to_json(self, ctx):
        return {
            "status": self.status,
            "integral": self.render(ctx),
            "latex": self.render(ctx, "latex"),
            "certificate": None,
        }


@dataclass
class NotElementary:
    status: str
    system: LinearSystem
    remainder: FieldElement

    def reverify(self):
        """The refutation holds iff the system is inconsistent under an
        independent fraction-free elimination."""
        return not self.system.consistent_fraction_free()

    def to_json(self, ctx):
        return {
            "status": "not_elementary",
            "integral": None,
            "certificate": self.system.to_json(ctx),
        }


def elementary_integrate(f, ctx, mode=OPERATOR):
    """Decide elementary integrability of f over the tower and assemble
    the integral when it exists."""
    rp = complete_reduce(f, ctx, mode)
    if rp.r.is_zero():
        return ElementaryIntegral(status="infield", infield=rp.g)
    n = ctx.nlevels
    split_f = remainder_split(rp.r, ctx, check=False)
    splits = {}
    for i in range(1, n + 1):
        splits[i] = remainder_split(ctx.assoc[i].phi_tp, ctx, check=False)
    # residue-constancy rows, level by level
    rows, rhs = [], []
    names = [f"z{i}" for i in range(1, n + 1)]
    for level in range(1, n + 1):
        s_f = split_f.s_by_level.get(level, ZERO)
        s_gs = [splits[i].s_by_level.get(level, ZERO) for i in range(1, n + 1)]
        if s_f.is_zero() and all(g.is_zero() for g in s_gs):
            continue
        sub = constant_matrix(s_f, s_gs, ctx, level, mode)
        rows.extend(sub.rows)
        rhs.extend(sub.rhs)
    # polynomial-component rows by basis coordinates
    p_f = split_f.p_total
    p_gs = [splits[i].p_total for i in range(1, n + 1)]
    coords = [decompose(p_f, ctx)] + [decompose(p, ctx) for p in p_gs]
    atom_set = set()
    for cd in coords:
        atom_set.update(cd.keys())
    for theta in sorted(atom_set, key=repr):
        rows.append([coords[i].get(theta, ZERO) for i in range(1, n + 1)])
        rhs.append(coords[0].get(theta, ZERO))
    system = LinearSystem(rows, rhs, names)
    sol, ok = solve_affine(rows, rhs) if rows else ([ZERO] * n, True)
    if not ok:
        return NotElementary(status="not_elementary", system=system, remainder=rp.r)
    # assemble: r~ in C(x), s~ with constant residues, plus the generators
    r_t = split_f.r0
    for i in range(1, n + 1):
        r_t = r_t - sol[i - 1] * splits[i].r0
    g0 = phi0_reduce(r_t, ctx)
    log_terms, root_sums, rs_levels = [], [], {}
    if not g0.r.is_zero():
        lt, rs = rothstein_trager(g0.r, ctx, 0, mode=mode)
        log_terms.extend(lt)
        for one in rs:
            rs_levels[len(root_sums)] = 0
            root_sums.append(one)
    for level in range(1, n + 1):
        s_l = split_f.s_by_level.get(level, ZERO)
        for i in range(1, n + 1):
            s_l = s_l - sol[i - 1] * splits[i].s_by_level.get(level, ZERO)
        if s_l.is_zero():
            continue
        lt, rs = rothstein_trager(s_l, ctx, level, mode=mode)
        log_terms.extend(lt)
        for one in rs:
            rs_levels[len(root_sums)] = level
            root_sums.append(one)
    infield = rp.g + g0.g
    for i in range(1, n + 1):
        ci = sol[i - 1]
        if not ci.is_zero():
            infield = infield + ci * (ctx.gen(i) - ctx.assoc[i].lam)
    log_terms = merge_log_terms(log_terms)
    return ElementaryIntegral(
        status="elementary",
        infield=infield,
        log_terms=log_terms,
        root_sums=root_sums,
        solution=sol,
        system=system,
        rootsum_levels=rs_levels,
    )


def merge_log_terms(terms):
    """Combine logarithms whose residues are rational multiples of one
    another: n*log(a) + m*log(b) -> g*log(a^(n/g) * b^(m/g))."""
    groups = []
    for lt in terms:
        if lt.residue.is_zero() or lt.argument.is_one():
            continue
        placed = False
        for grp in groups:
            ratio = lt.residue / grp[0].residue
            if ratio.is_rational():
                grp.append(lt)
                placed = True
                break
        if not placed:
            groups.append([lt])
    out = []
    for grp in groups:
        base = grp[0].residue
        ratios = [(lt.residue / base).as_q() for lt in grp]
        dens = 1
        for r in ratios:
            dens = dens * qden(r) // _gcd_int(dens, qden(r))
        gnum = 0
        for r in ratios:
            gnum = _gcd_int(gnum, qnum(r) * dens // qden(r))
        gamma = base * qq(gnum, dens)
        arg = ONE
        for lt, r in zip(grp, ratios):
            k = r * qq(dens, gnum)
            arg = arg * lt.argument ** qnum(k)
        if gamma.is_rational() and gamma.as_q() < 0:
            gamma = -gamma
            arg = arg.inverse()
        out.append(LogTerm(residue=gamma, argument=arg))
    return out


def _gcd_int(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a
