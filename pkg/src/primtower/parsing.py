"""Expression grammar, AST, and rendering.

Standard infix grammar, LL(1), no implicit multiplication::

    expr  := term (('+'|'-') term)*
    term  := unary (('*'|'/') unary)*
    unary := '-' unary | power
    power := atom ('^' INT)?
    atom  := INT | NAME | '(' expr ')'

``^`` takes nonnegative integer literal exponents only.  Rendering
produces strings the parser accepts, so parse-render round-trips are
identities on canonical forms.
"""

import re

from .elements import FieldElement
from .errors import ParseError, UnknownSymbolError
from .polys import is_q, qq, vterms
from .rationals import q_to_str

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()+\-*/^]))")


class Num:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value


class Sym:
    __slots__ = ("name",)

    def __init__(self, name):
        self.name = name


class Neg:
    __slots__ = ("child",)

    def __init__(self, child):
        self.child = child


class Bin:
    __slots__ = ("op", "left", "right")

    def __init__(self, op, left, right):
        self.op = op
        self.left = left
        self.right = right


class Pow:
    __slots__ = ("base", "exponent")

    def __init__(self, base, exponent):
        self.base = base
        self.exponent = exponent


def tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at)
        if m.group(1):
            out.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            out.append(("name", m.group(2), m.start(2)))
        else:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, tokens):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def expr(self):
        node = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                node = Bin(val, node, self.term())
            else:
                return node

    def term(self):
        node = self.unary()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                node = Bin(val, node, self.unary())
            else:
                return node

    def unary(self):
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, v, p = self.take()
            if k != "int":
                raise ParseError("exponent must be a nonnegative integer", p)
            return Pow(node, int(v))
        return node

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return Num(qq(int(val)))
        if kind == "name":
            return Sym(val)
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(f"unexpected token {val!r}", pos)


def parse(text):
    parser = _Parser(tokenize(text))
    node = parser.expr()
    kind, val, pos = parser.peek()
    if kind != "end":
        raise ParseError(f"trailing input starting at {val!r}", pos)
    return node


def node_count(ast):
    if isinstance(ast, (Num, Sym)):
        return 1
    if isinstance(ast, (Neg, Pow)):
        return 1 + node_count(ast.child if isinstance(ast, Neg) else ast.base)
    return 1 + node_count(ast.left) + node_count(ast.right)


def compile_ast(ast, symbols):
    """Evaluate an AST to a FieldElement; symbols maps names to elements."""
    if isinstance(ast, Num):
        return FieldElement.const(ast.value)
    if isinstance(ast, Sym):
        try:
            return symbols[ast.name]
        except KeyError:
            raise UnknownSymbolError(ast.name) from None
    if isinstance(ast, Neg):
        return -compile_ast(ast.child, symbols)
    if isinstance(ast, Pow):
        return compile_ast(ast.base, symbols) ** ast.exponent
    left = compile_ast(ast.left, symbols)
    right = compile_ast(ast.right, symbols)
    if ast.op == "+":
        return left + right
    if ast.op == "-":
        return left - right
    if ast.op == "*":
        return left * right
    return left / right


def parse_element(text, symbols):
    return compile_ast(parse(text), symbols)


# ----------------------------------------------------------------------
# Rendering

_SUBSCRIPT = re.compile(r"^([A-Za-z_]+)(\d+)$")


def _latex_name(name):
    m = _SUBSCRIPT.match(name)
    return f"{m.group(1)}_{{{m.group(2)}}}" if m else name


def _term_str(mono, coeff, names, latex):
    parts = []
    for var, e in sorted(mono, reverse=True):
        name = names[var]
        if latex:
            name = _latex_name(name)
        parts.append(name if e == 1 else
                     (f"{name}^{{{e}}}" if latex else f"{name}^{e}"))
    sep = " " if latex else "*"
    body = sep.join(parts)
    if not body:
        return q_to_str(coeff)
    if coeff == 1:
        return body
    if coeff == -1:
        return "-" + body
    return q_to_str(coeff) + sep + body


def _value_str(v, names, latex=False):
    if is_q(v):
        return q_to_str(v)
    terms = vterms(v)
    terms.sort(key=lambda tq: (-sum(e for _, e in tq[0]),
                               tuple(sorted(((-var, -e) for var, e in tq[0])))))
    out = ""
    for mono, q in terms:
        s = _term_str(mono, q, names, latex)
        if not out:
            out = s
        elif s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out


def _is_atomic(v):
    if is_q(v):
        return True
    terms = vterms(v)
    if len(terms) != 1:
        return False
    mono, q = terms[0]
    return q == 1 and len(mono) == 1


def render_element(f, names, fmt="plain"):
    """Render a FieldElement; names maps variable index to display name."""
    if fmt == "latex":
        if f.is_zero():
            return "0"
        num = _value_str(f.num, names, latex=True)
        if is_q(f.den) and f.den == 1:
            return num
        den = _value_str(f.den, names, latex=True)
        return f"\\frac{{{num}}}{{{den}}}"
    num = _value_str(f.num, names)
    if is_q(f.den) and f.den == 1:
        return num
    if " + " in num or " - " in num:
        num = f"({num})"
    den = _value_str(f.den, names)
    if not _is_atomic(f.den):
        den = f"({den})"
    return f"{num}/{den}"
