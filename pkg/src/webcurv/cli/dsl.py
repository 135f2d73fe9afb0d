"""A small text format for fields, foliations and webs.

    field Q(xi3: t^2+t+1);
    pol g = x^3 + y^3;
    fol F = d(g);
    web W = [dx]*[dy]*F;
    verify W;

Statements end with ';'. Comments run from '#' to the end of the line.
"""

import re
from dataclasses import dataclass, field as dc_field

from ..algebra import QQ, QQ_XI3, BinaryForm, MultiPoly, NumberField, RatFunc, linear_factors
from ..geometry import Foliation

KEYWORDS = ("field", "pol", "fol", "web", "verify", "rank", "plot")
DIRECTIVES = ("verify", "rank", "plot")
CALLS = ("d", "form", "pencil")
RESERVED = ("x", "y", "dx", "dy") + CALLS + KEYWORDS


class SpecError(Exception):
    def __init__(self, msg, pos=None):
        self.msg = msg
        self.pos = pos
        where = f"{pos[0]}:{pos[1]}: " if pos else ""
        super().__init__(where + msg)


# -- AST -------------------------------------------------------------------------


def _pos():
    return dc_field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Num:
    value: int
    pos: tuple = _pos()


@dataclass(frozen=True)
class Name:
    id: str
    pos: tuple = _pos()


@dataclass(frozen=True)
class Unary:
    op: str
    arg: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Bin:
    op: str
    left: object
    right: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Point:
    coords: tuple
    projective: bool
    pos: tuple = _pos()


@dataclass(frozen=True)
class Call:
    fn: str
    args: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class Bracket:
    expr: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class FieldDecl:
    name: str
    sym: str = None
    minpoly: object = None
    pos: tuple = _pos()


@dataclass(frozen=True)
class PolDecl:
    name: str
    expr: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class FolDecl:
    name: str
    expr: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class WebDecl:
    name: str
    factors: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class Directive:
    verb: str
    target: str
    options: tuple = ()
    pos: tuple = _pos()


@dataclass(frozen=True)
class Document:
    decls: tuple


# -- lexer -----------------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<num>\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\*\*|[-+*/^()\[\],;:=])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str
    text: str
    pos: tuple


def tokenize(text):
    out = []
    line, col, i = 1, 1, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise SpecError(f"unexpected character {text[i]!r}", (line, col))
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        elif kind != "ws":
            out.append(Token(kind, "^" if s == "**" else s, (line, col)))
            col += len(s)
        else:
            col += len(s)
        i = m.end()
    out.append(Token("eof", "", (line, col)))
    return out


# -- parser ----------------------------------------------------------------------


class Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def at(self, text):
        return self.tok.kind in ("op", "name") and self.tok.text == text

    def expect(self, text):
        if not self.at(text):
            got = self.tok.text or "end of input"
            raise SpecError(f"expected {text!r}, got {got!r}", self.tok.pos)
        return self.next()

    def ident(self, what="name"):
        t = self.tok
        if t.kind != "name":
            raise SpecError(f"expected {what}, got {t.text or 'end of input'!r}", t.pos)
        self.next()
        return t

    def document(self):
        decls = []
        while self.tok.kind != "eof":
            decls.append(self.decl())
            self.expect(";")
        return Document(tuple(decls))

    def decl(self):
        t = self.tok
        if t.kind != "name" or t.text not in KEYWORDS:
            raise SpecError(f"expected a declaration, got {t.text!r}", t.pos)
        self.next()
        kw = t.text
        if kw == "field":
            name = self.ident("field name").text
            sym = poly = None
            if self.at("("):
                self.next()
                sym = self.ident("generator symbol").text
                self.expect(":")
                poly = self.expr()
                self.expect(")")
            return FieldDecl(name, sym, poly, t.pos)
        if kw in DIRECTIVES:
            target = self.ident("target name").text
            opts = []
            while self.tok.kind == "name":
                k = self.next().text
                self.expect("=")
                v = self.tok
                if v.kind not in ("num", "name"):
                    raise SpecError(f"bad option value {v.text!r}", v.pos)
                self.next()
                opts.append((k, v.text))
            return Directive(kw, target, tuple(opts), t.pos)
        name = self.ident()
        if name.text in RESERVED:
            raise SpecError(f"{name.text!r} is reserved", name.pos)
        self.expect("=")
        if kw == "pol":
            return PolDecl(name.text, self.expr(), t.pos)
        if kw == "fol":
            return FolDecl(name.text, self.factor_item(), t.pos)
        factors = [self.factor_item()]
        while self.at("*"):
            self.next()
            factors.append(self.factor_item())
        return WebDecl(name.text, tuple(factors), t.pos)

    def factor_item(self):
        t = self.tok
        if self.at("["):
            self.next()
            e = self.expr()
            self.expect("]")
            return Bracket(e, t.pos)
        if t.kind == "name" and t.text in CALLS:
            return self.call()
        if t.kind == "name":
            self.next()
            return Name(t.text, t.pos)
        raise SpecError(f"expected a foliation, got {t.text or 'end of input'!r}", t.pos)

    def call(self):
        t = self.next()
        self.expect("(")
        if t.text == "pencil":
            args = (self.point(),)
        elif t.text == "form":
            a = self.expr()
            self.expect(",")
            args = (a, self.expr())
        else:
            args = (self.expr(),)
        self.expect(")")
        return Call(t.text, args, t.pos)

    def point(self):
        t = self.tok
        if self.at("["):
            self.next()
            cs = [self.expr()]
            for _ in range(2):
                self.expect(":")
                cs.append(self.expr())
            self.expect("]")
            return Point(tuple(cs), True, t.pos)
        self.expect("(")
        a = self.expr()
        self.expect(",")
        b = self.expr()
        self.expect(")")
        return Point((a, b), False, t.pos)

    def expr(self):
        left = self.term()
        while self.at("+") or self.at("-"):
            op = self.next()
            left = Bin(op.text, left, self.term(), op.pos)
        return left

    def term(self):
        left = self.unary()
        while self.at("*") or self.at("/"):
            op = self.next()
            left = Bin(op.text, left, self.unary(), op.pos)
        return left

    def unary(self):
        if self.at("-") or self.at("+"):
            op = self.next()
            return Unary(op.text, self.unary(), op.pos)
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            op = self.next()
            return Bin("^", base, self.unary(), op.pos)
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.next()
            return Num(int(t.text), t.pos)
        if self.at("("):
            self.next()
            e = self.expr()
            self.expect(")")
            return e
        if t.kind == "name" and t.text in CALLS:
            return self.call()
        if t.kind == "name":
            self.next()
            return Name(t.text, t.pos)
        raise SpecError(f"expected an expression, got {t.text or 'end of input'!r}", t.pos)


def parse_spec(text):
    return Parser(text).document()


# -- printer ---------------------------------------------------------------------


def show(node):
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Name):
        return node.id
    if isinstance(node, Unary):
        return f"({node.op}{show(node.arg)})"
    if isinstance(node, Bin):
        return f"({show(node.left)} {node.op} {show(node.right)})"
    if isinstance(node, Point):
        sep = ":" if node.projective else ","
        body = sep.join(show(c) for c in node.coords)
        return f"[{body}]" if node.projective else f"({body})"
    if isinstance(node, Call):
        return f"{node.fn}(" + ", ".join(show(a) for a in node.args) + ")"
    if isinstance(node, Bracket):
        return f"[{show(node.expr)}]"
    if isinstance(node, FieldDecl):
        if node.sym is None:
            return f"field {node.name}"
        return f"field {node.name}({node.sym}: {show(node.minpoly)})"
    if isinstance(node, PolDecl):
        return f"pol {node.name} = {show(node.expr)}"
    if isinstance(node, FolDecl):
        return f"fol {node.name} = {show(node.expr)}"
    if isinstance(node, WebDecl):
        return f"web {node.name} = " + " * ".join(show(f) for f in node.factors)
    if isinstance(node, Directive):
        opts = "".join(f" {k}={v}" for k, v in node.options)
        return f"{node.verb} {node.target}{opts}"
    if isinstance(node, Document):
        return "".join(show(d) + ";\n" for d in node.decls)
    raise TypeError(f"cannot print {node!r}")


# -- evaluation ------------------------------------------------------------------


class DVal:
    """Polynomial in dx, dy with rational-function coefficients."""

    def __init__(self, field, terms):
        self.field = field
        self.terms = {k: v for k, v in terms.items() if not v.is_zero()}

    @classmethod
    def scalar(cls, field, r):
        return cls(field, {(0, 0): r})

    def degrees(self):
        return {i + j for i, j in self.terms}

    def is_scalar(self):
        return set(self.terms) <= {(0, 0)}

    def as_scalar(self):
        return self.terms.get((0, 0), RatFunc(MultiPoly.zero(self.field)))

    def __add__(self, o):
        out = dict(self.terms)
        for k, v in o.terms.items():
            out[k] = out[k] + v if k in out else v
        return DVal(self.field, out)

    def __neg__(self):
        return DVal(self.field, {k: -v for k, v in self.terms.items()})

    def __mul__(self, o):
        out = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in o.terms.items():
                key = (i + k, j + l)
                out[key] = out[key] + a * b if key in out else a * b
        return DVal(self.field, out)


@dataclass
class FolInfo:
    """A foliation with whatever first integral its definition provides."""
    foliation: Foliation
    first_integral: RatFunc = None
    point: tuple = None
    label: str = ""


@dataclass
class Env:
    field: object = QQ
    sym: str = None
    pols: dict = dc_field(default_factory=dict)
    fols: dict = dc_field(default_factory=dict)
    webs: dict = dc_field(default_factory=dict)
    directives: list = dc_field(default_factory=list)


def _minpoly_coeffs(node, sym):
    """Coefficients of a univariate polynomial written in one variable."""
    names = set()

    def walk(n):
        if isinstance(n, Name):
            names.add(n.id)
        for v in getattr(n, "__dict__", {}).values():
            if isinstance(v, (Num, Name, Unary, Bin)):
                walk(v)
    walk(node)
    if len(names) > 1:
        raise SpecError(f"minimal polynomial must use one variable, found {sorted(names)}", node.pos)
    var = names.pop() if names else sym
    # evaluate as a polynomial in x with var -> x
    env = Env()
    env.pols[var] = DVal.scalar(QQ, RatFunc(MultiPoly.x(QQ)))
    val = _eval(node, env, allow_vars=False)
    r = val.as_scalar()
    if not r.is_polynomial() or r.num.degree_in("y") > 0:
        raise SpecError("minimal polynomial must be a polynomial", node.pos)
    p = r.num * r.den.constant_value().inverse()
    n = p.degree()
    coeffs = [p.coefficient(i, 0).to_rational() for i in range(n + 1)]
    if n < 1:
        raise SpecError("minimal polynomial must have degree >= 1", node.pos)
    lead = coeffs[-1]
    return [c / lead for c in coeffs]


def _eval(node, env, allow_vars=True):
    f = env.field
    if isinstance(node, Num):
        return DVal.scalar(f, RatFunc.const(f, node.value))
    if isinstance(node, Name):
        n = node.id
        if n in env.pols:
            return env.pols[n]
        if n == env.sym:
            return DVal.scalar(f, RatFunc.const(f, f.gen()))
        if allow_vars:
            if n == "x":
                return DVal.scalar(f, RatFunc(MultiPoly.x(f)))
            if n == "y":
                return DVal.scalar(f, RatFunc(MultiPoly.y(f)))
            if n == "dx":
                return DVal(f, {(1, 0): RatFunc.const(f, 1)})
            if n == "dy":
                return DVal(f, {(0, 1): RatFunc.const(f, 1)})
        if n in env.fols or n in env.webs:
            raise SpecError(f"{n!r} is a foliation or web, not an expression", node.pos)
        raise SpecError(f"unknown name {n!r}", node.pos)
    if isinstance(node, Unary):
        v = _eval(node.arg, env, allow_vars)
        return -v if node.op == "-" else v
    if isinstance(node, Bin):
        a = _eval(node.left, env, allow_vars)
        if node.op == "^":
            e = _const_int(node.right)
            if e is None:
                raise SpecError("exponent must be an integer literal", node.right.pos or node.pos)
            if e < 0 and not a.is_scalar():
                raise SpecError("negative power of a differential", node.pos)
            if a.is_scalar():
                s = a.as_scalar()
                if e < 0 and s.is_zero():
                    raise SpecError("division by zero", node.pos)
                return DVal.scalar(f, s ** e)
            out = DVal.scalar(f, RatFunc.const(f, 1))
            for _ in range(e):
                out = out * a
            return out
        b = _eval(node.right, env, allow_vars)
        if node.op == "+":
            return a + b
        if node.op == "-":
            return a + (-b)
        if node.op == "*":
            return a * b
        if node.op == "/":
            if not b.is_scalar():
                raise SpecError("cannot divide by a differential", node.pos)
            s = b.as_scalar()
            if s.is_zero():
                raise SpecError("division by zero", node.pos)
            return a * DVal.scalar(f, s.inverse())
    if isinstance(node, Call):
        raise SpecError(f"{node.fn}(...) is not allowed inside an expression", node.pos)
    raise SpecError("unsupported expression", getattr(node, "pos", None))


def _const_int(node):
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Unary) and isinstance(node.arg, Num):
        return -node.arg.value if node.op == "-" else node.arg.value
    return None


def _scalar(node, env, what):
    v = _eval(node, env)
    if not v.is_scalar():
        raise SpecError(f"{what} must not involve dx or dy", node.pos)
    return v.as_scalar()


def _constant(node, env):
    r = _scalar(node, env, "a point coordinate")
    if not r.is_constant():
        raise SpecError("point coordinates must be constants", node.pos)
    return r.num.constant_value() / r.den.constant_value()


def _form_from(a, b):
    """Foliation [a dx + b dy] from rational coefficients, denominators cleared."""
    return Foliation(a.num * b.den, b.num * a.den)


def _fols_of(node, env, label, many):
    f = env.field
    if isinstance(node, Name):
        if node.id in env.fols:
            return [env.fols[node.id]]
        if many and node.id in env.webs:
            return list(env.webs[node.id])
        raise SpecError(f"unknown foliation {node.id!r}", node.pos)
    if isinstance(node, Call):
        if node.fn == "d":
            r = _scalar(node.args[0], env, "the argument of d(...)")
            if r.is_constant():
                raise SpecError("d(...) of a constant", node.pos)
            return [FolInfo(Foliation.d(r), r, None, label)]
        if node.fn == "form":
            a = _scalar(node.args[0], env, "form coefficients")
            b = _scalar(node.args[1], env, "form coefficients")
            if a.is_zero() and b.is_zero():
                raise SpecError("form(0, 0) is not a foliation", node.pos)
            return [FolInfo(_form_from(a, b), None, None, label)]
        if node.fn == "pencil":
            pt = node.args[0]
            cs = [_constant(c, env) for c in pt.coords]
            if not pt.projective:
                cs.append(f.one())
            if all(c.is_zero() for c in cs):
                raise SpecError("[0:0:0] is not a point", pt.pos)
            return [FolInfo(Foliation.pencil(tuple(cs), f), None, tuple(cs), label)]
    if isinstance(node, Bracket):
        v = _eval(node.expr, env)
        degs = v.degrees()
        if len(degs) != 1 or 0 in degs:
            raise SpecError("a bracket must hold a form homogeneous in dx, dy", node.pos)
        k = degs.pop()
        if k == 1:
            a = v.terms.get((1, 0), RatFunc(MultiPoly.zero(f)))
            b = v.terms.get((0, 1), RatFunc(MultiPoly.zero(f)))
            fi = None
            if a.is_constant() and b.is_constant():
                fi = RatFunc(MultiPoly.x(f)) * a + RatFunc(MultiPoly.y(f)) * b
            return [FolInfo(_form_from(a, b), fi, None, label)]
        if not many:
            raise SpecError("a foliation needs a form of degree 1 in dx, dy", node.pos)
        if not all(c.is_constant() for c in v.terms.values()):
            raise SpecError("products of forms need constant coefficients", node.pos)
        coeffs = []
        for m in range(k + 1):
            c = v.terms.get((k - m, m))
            coeffs.append(c.num.constant_value() / c.den.constant_value() if c else f.zero())
        facs, residual = linear_factors(BinaryForm(f, coeffs))
        if residual.degree > 0:
            raise SpecError(f"the form does not split into linear factors over {f.label}", node.pos)
        out = []
        for lin, m in facs:
            if m > 1:
                raise SpecError("repeated factor: the foliations are not distinct", node.pos)
            a, b = lin.coeffs
            fi = RatFunc(MultiPoly.x(f) * a + MultiPoly.y(f) * b)
            out.append(FolInfo(Foliation(MultiPoly.const(f, a), MultiPoly.const(f, b)), fi, None,
                               f"[({a})*dx + ({b})*dy]"))
        return out
    raise SpecError("expected a foliation", getattr(node, "pos", None))


def build(doc):
    """Evaluate a parsed document into an Env of foliations and webs."""
    env = Env()
    seen = set()
    for d in doc.decls:
        if isinstance(d, FieldDecl):
            if seen:
                raise SpecError("the field must be declared before anything else", d.pos)
            if d.sym is None:
                if d.name not in ("Q", "QQ"):
                    raise SpecError(f"unknown field {d.name!r}", d.pos)
                env.field = QQ
                continue
            if d.sym in RESERVED:
                raise SpecError(f"{d.sym!r} is reserved", d.pos)
            coeffs = _minpoly_coeffs(d.minpoly, d.sym)
            if tuple(coeffs) == QQ_XI3.minimal_polynomial:
                env.field = QQ_XI3
            else:
                try:
                    env.field = NumberField(coeffs, f"{d.name}({d.sym})", check=True)
                except ValueError as e:
                    raise SpecError(str(e), d.pos)
            env.sym = d.sym
            continue
        if isinstance(d, Directive):
            if d.target not in env.webs and d.target not in env.fols:
                raise SpecError(f"unknown target {d.target!r}", d.pos)
            env.directives.append(d)
            continue
        if d.name in seen:
            raise SpecError(f"{d.name!r} is already defined", d.pos)
        if d.name == env.sym:
            raise SpecError(f"{d.name!r} names the field generator", d.pos)
        seen.add(d.name)
        if isinstance(d, PolDecl):
            env.pols[d.name] = _eval(d.expr, env)
        elif isinstance(d, FolDecl):
            env.fols[d.name] = _fols_of(d.expr, env, d.name, many=False)[0]
        elif isinstance(d, WebDecl):
            members = []
            for fac in d.factors:
                members += _fols_of(fac, env, show(fac), many=True)
            env.webs[d.name] = members
    return env


def load(text):
    return build(parse_spec(text))


__all__ = ["SpecError", "parse_spec", "show", "build", "load", "Env", "FolInfo", "Document",
           "Num", "Name", "Unary", "Bin", "Point", "Call", "Bracket", "FieldDecl", "PolDecl",
           "FolDecl", "WebDecl", "Directive"]
