"""Effective constant-linear bases of the tower fields.

Each level contributes either a power atom t^k or a partial-fraction
atom t^k/q^m (q monic irreducible, 0 <= k < deg q, m >= 1); a basis
index is the per-level product of atoms, trivial atoms trimmed.  Two
operations make the basis effective: finding an atom with nonzero
coordinate for any nonzero element, and extracting the coordinate of
any element at any atom.  Both recurse level by level through q-adic
expansions, so no factorization happens on the extraction path; the
deterministic factor order fixes the found atom once and for all.
"""

from dataclasses import dataclass

from .elements import ZERO
from .fieldpoly import (
    element_as_fraction,
    fpoly_factor,
    partial_fraction_atoms,
    q_adic_expand,
)


@dataclass(frozen=True)
class PowerAtom:
    k: int

    def is_trivial(self):
        return self.k == 0


@dataclass(frozen=True)
class FractionAtom:
    k: int
    q: object  # monic irreducible FPoly
    m: int

    def is_trivial(self):
        return False


_TRIVIAL = PowerAtom(0)


class BasisIndex:
    """Product basis element; atoms[i] belongs to level i (0 = base)."""

    __slots__ = ("atoms",)

    def __init__(self, atoms=()):
        n = len(atoms)
        while n and atoms[n - 1] == _TRIVIAL:
            n -= 1
        self.atoms = tuple(atoms[:n])

    def atom(self, level):
        return self.atoms[level] if level < len(self.atoms) else _TRIVIAL

    def top_level(self):
        return len(self.atoms) - 1

    def with_atom(self, level, atom):
        atoms = list(self.atoms) + [_TRIVIAL] * (level + 1 - len(self.atoms))
        atoms[level] = atom
        return BasisIndex(atoms)

    def is_trivial(self):
        return not self.atoms

    def __eq__(self, other):
        return isinstance(other, BasisIndex) and self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def __repr__(self):
        return f"BasisIndex({list(self.atoms)!r})"

    def to_json(self, ctx):
        out = []
        for level, atom in enumerate(self.atoms):
            if atom == _TRIVIAL:
                continue
            if isinstance(atom, PowerAtom):
                out.append({"level": level, "kind": "power", "k": atom.k})
            else:
                out.append({
                    "level": level,
                    "kind": "fraction",
                    "k": atom.k,
                    "q": ctx.render(atom.q.to_element()),
                    "m": atom.m,
                })
        return out

    def render(self, ctx):
        parts = []
        for level, atom in enumerate(self.atoms):
            t = ctx.var_name(ctx.var_of_level(level))
            if isinstance(atom, PowerAtom):
                if atom.k:
                    parts.append(t if atom.k == 1 else f"{t}^{atom.k}")
            else:
                top = "1" if atom.k == 0 else (t if atom.k == 1 else f"{t}^{atom.k}")
                q = ctx.render(atom.q.to_element())
                parts.append(f"{top}/({q})" + ("" if atom.m == 1 else f"^{atom.m}"))
        return "*".join(parts) if parts else "1"


def basis_element(a, ctx):
    """An effective atom for a nonzero element and its coordinate.

    Top level first: a nonzero polynomial part selects the power atom of
    its degree; otherwise the first irreducible factor of the denominator
    (canonical order) selects a partial-fraction atom.  The extracted
    leading coefficient recurses one level down.
    """
    if a.is_zero():
        raise ZeroDivisionError("no effective atom for zero")
    if ctx.is_constant(a):
        return BasisIndex(), a
    level = ctx.level_of(a)
    var = ctx.var_of_level(level)
    num, den = element_as_fraction(a, var)
    p, r = num.divmod(den)
    if not p.is_zero():
        k = int(p.degree())
        theta, c = basis_element(p.lc(), ctx)
        return theta.with_atom(level, PowerAtom(k)), c
    with ctx.lock:
        _, factors = fpoly_factor(den, ctx.limits, ctx.factor_memo)
    q, m = factors[0]
    h = q_adic_expand(r.to_element() / den.to_element(), q, m)[m - 1]
    k = int(h.degree())
    theta, c = basis_element(h.lc(), ctx)
    return theta.with_atom(level, FractionAtom(k, q, m)), c


def coefficient(b, theta, ctx):
    """The theta-coordinate of b (a constant-field element; 0 if absent)."""
    if b.is_zero():
        return ZERO
    level = max(ctx.level_of(b) if not ctx.is_constant(b) else -1,
                theta.top_level())
    return _extract(b, theta, level, ctx)


def _extract(b, theta, level, ctx):
    if b.is_zero():
        return ZERO
    if level < 0:
        return b if ctx.is_constant(b) else ZERO
    atom = theta.atom(level)
    var = ctx.var_of_level(level)
    if b.top_var() < var:
        # degree zero in this generator: only power-0 atoms can match
        if isinstance(atom, PowerAtom) and atom.k == 0:
            return _extract(b, theta, level - 1, ctx)
        return ZERO
    num, den = element_as_fraction(b, var)
    p, r = num.divmod(den)
    if isinstance(atom, PowerAtom):
        inner = p.coeff(atom.k)
        return _extract(inner, theta, level - 1, ctx)
    mult = 0
    d = den
    while True:
        quo, rem = d.divmod(atom.q)
        if not rem.is_zero():
            break
        d = quo
        mult += 1
    if mult < atom.m:
        return ZERO
    proper = r.to_element() / den.to_element()
    h = q_adic_expand(proper, atom.q, mult)[atom.m - 1]
    inner = h.coeff(atom.k)
    return _extract(inner, theta, level - 1, ctx)


def decompose(b, ctx):
    """Full coordinate vector: a finite map from basis atoms to nonzero
    constant coordinates with b equal to the atom-weighted sum."""
    out = {}
    _decompose(b, ctx, BasisIndex(), out)
    return out


def _decompose(b, ctx, prefix_from_above, out):
    if b.is_zero():
        return
    if ctx.is_constant(b):
        key = prefix_from_above
        out[key] = out.get(key, ZERO) + b
        if out[key].is_zero():
            del out[key]
        return
    level = ctx.level_of(b)
    var = ctx.var_of_level(level)
    num, den = element_as_fraction(b, var)
    p, r = num.divmod(den)
    for k in range(len(p.coeffs)):
        c = p.coeff(k)
        if c.is_zero():
            continue
        _decompose(c, ctx, prefix_from_above.with_atom(level, PowerAtom(k)), out)
    if r.is_zero():
        return
    with ctx.lock:
        _, factors = fpoly_factor(den, ctx.limits, ctx.factor_memo)
    proper = r.to_element() / den.to_element()
    for q, j, h in partial_fraction_atoms(proper, factors):
        for k in range(len(h.coeffs)):
            c = h.coeff(k)
            if c.is_zero():
                continue
            _decompose(c, ctx,
                       prefix_from_above.with_atom(level, FractionAtom(k, q, j)),
                       out)
