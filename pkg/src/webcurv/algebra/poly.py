"""Sparse bivariate polynomials over a number field.

Storage is a flint ``fmpq_mpoly`` in (x, y, t) where t stands for the
field generator; every stored polynomial has t-degree below the field
degree.  Public accessors only ever expose (i, j) -> FieldScalar terms.
"""

from fractions import Fraction
from functools import total_ordering

import flint

from .fields import QQ, FieldScalar, NumberField, _fmpq, as_rational, content_scale


@total_ordering
class Infinite:
    """Signed infinity returned by valuations of zero and pole orders of zero."""

    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __eq__(self, other):
        return isinstance(other, Infinite) and other.sign == self.sign

    def __lt__(self, other):
        if isinstance(other, Infinite):
            return self.sign < other.sign
        return self.sign < 0

    def __hash__(self):
        return hash(("inf", self.sign))

    def __neg__(self):
        return Infinite(-self.sign)

    def __repr__(self):
        return "INFINITY" if self.sign > 0 else "-INFINITY"


INFINITY = Infinite(1)
NEG_INFINITY = Infinite(-1)


def _reduce(field, p):
    if field.degree > 1 and p.degrees()[2] >= field.degree:
        return divmod(p, field._mt)[1]
    return p


def _scalar_poly(field, c):
    """flint constant (a polynomial in t) for a scalar."""
    if isinstance(c, FieldScalar):
        if c.field.degree > 1 and c.field != field:
            raise ValueError(f"field mismatch: {c.field.label} vs {field.label}")
        return field.ctx.from_dict({(0, 0, k): v for k, v in enumerate(c._p.coeffs()) if v})
    return field.ctx.constant(_fmpq(c))


def _common_field(f, g):
    if f == g:
        return f
    if g.degree == 1:
        return f
    if f.degree == 1:
        return g
    raise ValueError(f"field mismatch: {f.label} vs {g.label}")


def _t_free(p):
    return p.degrees()[2] <= 0


class MultiPoly:
    """Polynomial in x, y over a NumberField."""

    __slots__ = ("field", "_p", "_terms")

    def __init__(self, field, terms=None):
        self.field = field
        data = {}
        for (i, j), c in (terms or {}).items():
            if isinstance(c, FieldScalar):
                for k, v in enumerate(c._p.coeffs()):
                    if v:
                        data[(i, j, k)] = data.get((i, j, k), 0) + v
            else:
                v = _fmpq(c)
                if v:
                    data[(i, j, 0)] = data.get((i, j, 0), 0) + v
        self._p = _reduce(field, field.ctx.from_dict(data))
        self._terms = None

    @classmethod
    def _raw(cls, field, p):
        obj = cls.__new__(cls)
        obj.field = field
        obj._p = p
        obj._terms = None
        return obj

    @classmethod
    def x(cls, field=QQ):
        return cls._raw(field, field.ctx.gen(0))

    @classmethod
    def y(cls, field=QQ):
        return cls._raw(field, field.ctx.gen(1))

    @classmethod
    def const(cls, field, c):
        return cls._raw(field, _scalar_poly(field, c))

    @classmethod
    def zero(cls, field=QQ):
        return cls._raw(field, field.ctx.constant(0))

    @classmethod
    def one(cls, field=QQ):
        return cls._raw(field, field.ctx.constant(1))

    # -- access -------------------------------------------------------

    @property
    def terms(self):
        """{(i, j): FieldScalar} in graded-lex order, x > y, highest first."""
        if self._terms is None:
            acc = {}
            for (i, j, k), c in self._p.terms():
                acc.setdefault((i, j), {})[k] = c
            out = {}
            for key in sorted(acc, key=lambda m: (m[0] + m[1], m[0]), reverse=True):
                ks = acc[key]
                poly = flint.fmpq_poly([ks.get(k, 0) for k in range(max(ks) + 1)])
                out[key] = FieldScalar._raw(self.field, poly)
            self._terms = out
        return self._terms

    def coefficient(self, i, j):
        t = self.terms.get((i, j))
        return t if t is not None else self.field.zero()

    def leading_term(self):
        """((i, j), coefficient) for the graded-lex largest monomial."""
        if self.is_zero():
            raise ValueError("zero polynomial has no leading term")
        key = next(iter(self.terms))
        return key, self.terms[key]

    def is_zero(self):
        return self._p.is_zero()

    def is_constant(self):
        d = self._p.degrees()
        return d[0] <= 0 and d[1] <= 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.coefficient(0, 0)

    def degree(self):
        """Total degree in x and y; -1 for the zero polynomial."""
        if self.is_zero():
            return -1
        return max(i + j for i, j in self.terms)

    def degree_in(self, var):
        if self.is_zero():
            return -1
        return self._p.degrees()[_var_index(var)]

    def is_t_free(self):
        return _t_free(self._p)

    def rational_coefficients(self):
        return [as_rational(c) for c in self._p.coeffs()]

    def homogeneous_part(self, d):
        return MultiPoly._raw(self.field, self.field.ctx.from_dict(
            {m: c for m, c in self._p.terms() if m[0] + m[1] == d}))

    def is_homogeneous(self):
        return len({i + j for i, j in self.terms}) <= 1

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            field = _common_field(self.field, other.field)
            return field, other._p
        if isinstance(other, FieldScalar):
            field = _common_field(self.field, other.field)
            return field, _scalar_poly(field, other)
        if isinstance(other, (int, Fraction, flint.fmpq)):
            return self.field, self.field.ctx.constant(_fmpq(other))
        return None, None

    def __add__(self, other):
        field, o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MultiPoly._raw(field, self._p + o)

    __radd__ = __add__

    def __sub__(self, other):
        field, o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MultiPoly._raw(field, self._p - o)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return MultiPoly._raw(self.field, -self._p)

    def __mul__(self, other):
        field, o = self._coerce(other)
        if o is None:
            return NotImplemented
        return MultiPoly._raw(field, _reduce(field, self._p * o))

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.field.ctx.constant(1)
        base = self._p
        while n:
            if n & 1:
                result = _reduce(self.field, result * base)
            n >>= 1
            if n:
                base = _reduce(self.field, base * base)
        return MultiPoly._raw(self.field, result)

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if self.field != other.field and self.field.degree > 1 and other.field.degree > 1:
                return False
            return self._p == other._p
        if isinstance(other, (int, Fraction, FieldScalar)):
            return self == MultiPoly.const(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(sorted((m, str(c)) for m, c in self._p.terms())))

    def over(self, field):
        """The same polynomial viewed over a larger field."""
        if field == self.field:
            return self
        if self.field.degree != 1:
            raise ValueError(f"cannot move {self.field.label} polynomial to {field.label}")
        return MultiPoly._raw(field, self._p)

    # -- calculus and substitution -----------------------------------

    def diff(self, var):
        return MultiPoly._raw(self.field, self._p.derivative(_var_index(var)))

    def evaluate(self, x0, y0):
        f = self.field
        xs = _scalar_poly(f, f.coerce(x0) if f.degree > 1 else x0)
        ys = _scalar_poly(f, f.coerce(y0) if f.degree > 1 else y0)
        val = _reduce(f, self._p.compose(xs, ys, f.ctx.gen(2)))
        return _to_scalar(f, val)

    def compose(self, px, py):
        """Substitute x -> px, y -> py (MultiPolys over a compatible field)."""
        field = _common_field(_common_field(self.field, px.field), py.field)
        p = self._p.compose(px._p, py._p, field.ctx.gen(2))
        return MultiPoly._raw(field, _reduce(field, p))

    # -- division -----------------------------------------------------

    def _lex_lead(self):
        """Coefficient in the field of the lex-largest xy-monomial."""
        head = None
        coeffs = {}
        for (i, j, k), c in self._p.terms():
            if head is None:
                head = (i, j)
            elif (i, j) != head:
                break
            coeffs[k] = c
        poly = flint.fmpq_poly([coeffs.get(k, 0) for k in range(max(coeffs) + 1)])
        return head, FieldScalar._raw(self.field, poly)

    def divmod_exact(self, q):
        """(quotient, is_exact) for division by q over the field."""
        if not isinstance(q, MultiPoly):
            q = MultiPoly.const(self.field, q)
        if q.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        field = _common_field(self.field, q.field)
        if _t_free(q._p):
            quo, rem = divmod(self._p, q._p)
            return MultiPoly._raw(field, quo), rem.is_zero()
        _, lc = q._lex_lead()
        inv = lc.inverse()
        qm = _reduce(field, q._p * _scalar_poly(field, inv))
        quo, rem = divmod(self._p, qm)
        rem = _reduce(field, rem)
        quo = _reduce(field, _reduce(field, quo) * _scalar_poly(field, inv))
        return MultiPoly._raw(field, quo), rem.is_zero()

    def exquo(self, q):
        quo, ok = self.divmod_exact(q)
        if not ok:
            raise ArithmeticError("inexact polynomial division")
        return quo

    def divides(self, p):
        """True iff self divides p."""
        return p.divmod_exact(self)[1]

    # -- normal forms -------------------------------------------------

    def unit_scale(self):
        """Scalar c making c*self canonical: graded-lex leading coefficient a
        positive integer and coprime integer power-basis coordinates."""
        if self.is_zero():
            return self.field.one()
        _, lc = self.leading_term()
        inv = lc.inverse()
        monic = self * inv
        return inv * content_scale(monic.rational_coefficients())

    def normalized(self):
        if self.is_zero():
            return self
        return self * self.unit_scale()

    def rational_content_scale(self):
        return content_scale(self.rational_coefficients())

    def primitive(self):
        """Rational multiple with coprime integer coordinates and positive leading sign."""
        if self.is_zero():
            return self
        p = self * self.rational_content_scale()
        if p.leading_term()[1].sign_key() < 0:
            p = -p
        return p

    # -- display ------------------------------------------------------

    def __repr__(self):
        return f"MultiPoly({self})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for (i, j), c in self.terms.items():
            mono = "*".join(
                s for s in (
                    ("x" if i == 1 else f"x^{i}") if i else "",
                    ("y" if j == 1 else f"y^{j}") if j else "",
                ) if s
            )
            cs = str(c)
            if not c.is_rational():
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif cs == "1":
                parts.append(mono)
            elif cs == "-1":
                parts.append("-" + mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _var_index(var):
    if var in ("x", 0):
        return 0
    if var in ("y", 1):
        return 1
    raise ValueError(f"unknown variable {var!r}")


def _to_scalar(field, p):
    """flint polynomial in t only -> FieldScalar."""
    coeffs = {}
    for (i, j, k), c in p.terms():
        if i or j:
            raise ValueError("polynomial is not constant")
        coeffs[k] = c
    if not coeffs:
        return field.zero()
    return FieldScalar._raw(field, flint.fmpq_poly([coeffs.get(k, 0) for k in range(max(coeffs) + 1)]))


def x_y(field=QQ):
    return MultiPoly.x(field), MultiPoly.y(field)


# -- gcd ---------------------------------------------------------------


def _coeffs_in(p, var):
    """{exponent: flint poly} splitting p along one variable."""
    out = {}
    for mono, c in p.terms():
        e = mono[var]
        m = list(mono)
        m[var] = 0
        out.setdefault(e, {})[tuple(m)] = c
    ctx = p.context()
    return {e: ctx.from_dict(d) for e, d in out.items()}


def _monic_uni(field, a, var):
    """a scaled so its leading coefficient along var is 1 (a univariate)."""
    top = a.degrees()[var]
    coeffs = {}
    for mono, c in a.terms():
        if mono[var] == top:
            coeffs[mono[2]] = c
    lc = FieldScalar._raw(field, flint.fmpq_poly([coeffs.get(k, 0) for k in range(max(coeffs) + 1)]))
    return _reduce(field, a * _scalar_poly(field, lc.inverse()))


def _ugcd(field, a, b, var):
    """gcd of polynomials in a single variable over the field, monic."""
    while not b.is_zero():
        bm = _monic_uni(field, b, var)
        r = _reduce(field, divmod(a, bm)[1])
        a, b = b, r
    if a.is_zero():
        return a
    return _monic_uni(field, a, var)


def _exquo_raw(field, a, b):
    return MultiPoly._raw(field, a).exquo(MultiPoly._raw(field, b))._p


def _content(field, p, var, other):
    parts = list(_coeffs_in(p, var).values())
    g = parts[0]
    for c in parts[1:]:
        if g.degrees()[other] == 0 and not g.is_zero():
            break
        g = _ugcd(field, g, c, other)
    if g.degrees()[other] == 0:
        return field.ctx.constant(1)
    return _monic_uni(field, g, other)


def _gcd_field(field, a, b):
    """gcd over a number field by primitive remainder sequences in x over K[y]."""
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    if a.degrees()[0] == 0 and b.degrees()[0] == 0:
        return _ugcd(field, a, b, 1)
    if a.degrees()[0] == 0:
        return _ugcd(field, a, _content(field, b, 0, 1), 1) if a.degrees()[1] else field.ctx.constant(1)
    if b.degrees()[0] == 0:
        return _ugcd(field, b, _content(field, a, 0, 1), 1) if b.degrees()[1] else field.ctx.constant(1)
    ca = _content(field, a, 0, 1)
    cb = _content(field, b, 0, 1)
    c = _ugcd(field, ca, cb, 1)
    if c.is_zero() or c.degrees()[1] == 0:
        c = field.ctx.constant(1)
    a = _exquo_raw(field, a, ca)
    b = _exquo_raw(field, b, cb)
    if a.degrees()[0] < b.degrees()[0]:
        a, b = b, a
    while True:
        r = _prem(field, a, b)
        if r.is_zero():
            break
        if r.degrees()[0] == 0:
            b = field.ctx.constant(1)
            break
        a, b = b, _exquo_raw(field, r, _content(field, r, 0, 1))
    return _reduce(field, b * c)


def _prem(field, a, b):
    n = b.degrees()[0]
    lb = _coeffs_in(b, 0)[n]
    xg = field.ctx.gen(0)
    r = a
    while not r.is_zero() and r.degrees()[0] >= n:
        dr = r.degrees()[0]
        lr = _coeffs_in(r, 0)[dr]
        r = _reduce(field, lb * r - lr * xg ** (dr - n) * b)
    return r


def poly_gcd(p, q):
    """Primitive, sign-normalized gcd of two polynomials over one field."""
    if p.field != q.field and p.field.degree > 1 and q.field.degree > 1:
        raise ValueError(f"field mismatch: {p.field.label} vs {q.field.label}")
    field = _common_field(p.field, q.field)
    if p.is_zero():
        return q.over(field).normalized() if not q.is_zero() else q
    if q.is_zero():
        return p.over(field).normalized()
    if _t_free(p._p) and _t_free(q._p):
        g = p._p.gcd(q._p)
    else:
        g = _gcd_field(field, p._p, q._p)
    return MultiPoly._raw(field, g).normalized()


def is_squarefree(h):
    g = poly_gcd(poly_gcd(h, h.diff("x")), h.diff("y"))
    return g.is_constant()


def valuation(p, h):
    """Largest m with h^m | p; INFINITY when p = 0."""
    if h.is_constant():
        raise ValueError("valuation against a constant polynomial")
    if not is_squarefree(h):
        raise ValueError("valuation needs a square-free polynomial")
    if p.is_zero():
        return INFINITY
    m = 0
    while True:
        quo, ok = p.divmod_exact(h)
        if not ok:
            return m
        p = quo
        m += 1


def resultant(p, q, var="x"):
    """Resultant eliminating ``var``.

    MultiPoly inputs give a MultiPoly in the remaining variable; BinaryForm
    inputs give the homogeneous Sylvester determinant as a FieldScalar.
    """
    from .binary import BinaryForm, sylvester_resultant

    if isinstance(p, BinaryForm):
        return sylvester_resultant(p, q)
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    field = _common_field(p.field, q.field)
    v = _var_index(var)
    if p.degree_in(v) == 0 and q.degree_in(v) == 0:
        raise ValueError(f"both inputs are free of {var}")
    name = "xy"[v]
    r = p._p.resultant(q._p, name)
    return MultiPoly._raw(field, _reduce(field, r))
