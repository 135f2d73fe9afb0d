"""Reduced rational functions in x, y and truncated Taylor jets."""

from fractions import Fraction

import flint

from .fields import FieldScalar
from .poly import MultiPoly, _common_field, _reduce, _to_scalar, poly_gcd


def _as_poly(value, field):
    if isinstance(value, MultiPoly):
        return value
    return MultiPoly.const(field, value)


class RatFunc:
    """num/den with gcd 1 and a canonical denominator.

    The denominator's graded-lex leading coefficient is a positive integer
    and its power-basis coordinates are coprime integers, so two equal
    rational functions are stored identically.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        field = num.field if isinstance(num, MultiPoly) else den.field
        num = _as_poly(num, field)
        den = _as_poly(1 if den is None else den, num.field)
        field = _common_field(num.field, den.field)
        num, den = num.over(field), den.over(field)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = num, MultiPoly.one(field)
        elif reduce and not den.is_constant():
            g = poly_gcd(num, den)
            if not g.is_constant():
                num = num.exquo(g)
                den = den.exquo(g)
        s = den.unit_scale()
        self.num = num * s
        self.den = den * s

    @classmethod
    def const(cls, field, c):
        return cls(MultiPoly.const(field, c))

    @property
    def field(self):
        return self.num.field

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self):
        return self.den.is_constant()

    def _lift(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, MultiPoly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction, FieldScalar)):
            return RatFunc(MultiPoly.const(self.field, other))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num, reduce=False)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, reduce=False)

    def __eq__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def diff(self, var):
        n, d = self.num, self.den
        return RatFunc(n.diff(var) * d - n * d.diff(var), d * d)

    def evaluate(self, x0, y0):
        dv = self.den.evaluate(x0, y0)
        if dv.is_zero():
            raise ZeroDivisionError("evaluation on the polar locus")
        return self.num.evaluate(x0, y0) / dv

    def compose(self, px, py):
        """Substitute x -> px, y -> py where px, py are RatFuncs."""
        px = self._lift(px)
        py = self._lift(py)
        return _compose_frac(self.num, px, py) / _compose_frac(self.den, px, py)

    def over(self, field):
        return RatFunc(self.num.over(field), self.den.over(field), reduce=False)

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _compose_frac(p, px, py):
    """p(px, py) for RatFunc substitutions, clearing denominators in one pass."""
    if p.is_zero():
        return RatFunc(p)
    n = p.degree()
    field = _common_field(p.field, _common_field(px.field, py.field))
    dx, dy = px.den, py.den
    num_total = MultiPoly.zero(field)
    # homogenize with respect to the substitution denominators
    dxp = [MultiPoly.one(field)]
    dyp = [MultiPoly.one(field)]
    nxp = [MultiPoly.one(field)]
    nyp = [MultiPoly.one(field)]
    for _ in range(n):
        dxp.append(dxp[-1] * dx)
        dyp.append(dyp[-1] * dy)
        nxp.append(nxp[-1] * px.num)
        nyp.append(nyp[-1] * py.num)
    maxi = max(i for i, _ in p.terms)
    maxj = max(j for _, j in p.terms)
    for (i, j), c in p.terms.items():
        num_total = num_total + nxp[i] * dxp[maxi - i] * nyp[j] * dyp[maxj - j] * c
    return RatFunc(num_total, dxp[maxi] * dyp[maxj])


class JetSeries:
    """Taylor expansion truncated at total order N around a base point.

    Coefficients are stored as a polynomial in the local coordinates
    X = x - x0, Y = y - y0.
    """

    __slots__ = ("field", "base_point", "order", "_p")

    def __init__(self, field, base_point, order, poly):
        self.field = field
        self.base_point = tuple(field.coerce(c) for c in base_point)
        self.order = order
        self._p = _truncate(poly._p if isinstance(poly, MultiPoly) else poly, order, field)

    @property
    def coeffs(self):
        return {k: v for k, v in MultiPoly._raw(self.field, self._p).terms.items()}

    def coefficient(self, i, j):
        return MultiPoly._raw(self.field, self._p).coefficient(i, j)

    def local_poly(self):
        return MultiPoly._raw(self.field, self._p)

    def recompose(self):
        """The truncated expansion as a polynomial in the global x, y."""
        x, y = MultiPoly.x(self.field), MultiPoly.y(self.field)
        x0, y0 = self.base_point
        return self.local_poly().compose(x - x0, y - y0)

    def _same(self, other):
        if not isinstance(other, JetSeries):
            return None
        if other.base_point != self.base_point:
            raise ValueError("jets at different base points")
        return min(self.order, other.order)

    def _wrap(self, p, order):
        return JetSeries(self.field, self.base_point, order, p)

    def __add__(self, other):
        n = self._same(other)
        if n is None:
            return self._wrap(self._p + MultiPoly.const(self.field, other)._p, self.order)
        return self._wrap(self._p + other._p, n)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap(-self._p, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        n = self._same(other)
        if n is None:
            return self._wrap(_reduce(self.field, self._p * MultiPoly.const(self.field, other)._p), self.order)
        return self._wrap(_mul_trunc(self.field, self._p, other._p, n), n)

    __rmul__ = __mul__

    def __pow__(self, e):
        out = self._wrap(self.field.ctx.constant(1), self.order)
        for _ in range(e):
            out = out * self
        return out

    def constant_term(self):
        return self.coefficient(0, 0)

    def inverse(self):
        c = self.constant_term()
        if c.is_zero():
            raise ZeroDivisionError("jet with vanishing constant term")
        ci = c.inverse()
        rest = (self - c) * ci
        # 1/(c(1+r)) = c^-1 * sum (-r)^n
        term = self._wrap(self.field.ctx.constant(1), self.order)
        total = term
        neg = -rest
        for _ in range(self.order):
            term = term * neg
            if term._p.is_zero():
                break
            total = total + term
        return total * ci

    def __truediv__(self, other):
        if isinstance(other, JetSeries):
            return self * other.inverse()
        return self * self.field.coerce(other).inverse()

    def __eq__(self, other):
        return (isinstance(other, JetSeries) and self.base_point == other.base_point
                and self.order == other.order and self._p == other._p)

    def __repr__(self):
        return f"JetSeries(order={self.order}, {self.local_poly()})"


def _truncate(p, n, field):
    terms = {m: c for m, c in p.terms() if m[0] + m[1] <= n}
    if len(terms) == len(p):
        return p
    return field.ctx.from_dict(terms)


def _mul_trunc(field, a, b, n):
    return _truncate(_reduce(field, a * b), n, field)


def taylor_jet(r, base, order):
    """Truncated Taylor expansion of a RatFunc (or MultiPoly) at a base point."""
    if isinstance(r, MultiPoly):
        r = RatFunc(r)
    field = r.field
    x0, y0 = (field.coerce(c) for c in base)
    x, y = MultiPoly.x(field), MultiPoly.y(field)
    if r.den.evaluate(x0, y0).is_zero():
        raise ValueError("base point lies on the polar locus")
    num = r.num.compose(x + x0, y + y0)
    den = r.den.compose(x + x0, y + y0)
    jn = JetSeries(field, (x0, y0), order, num)
    jd = JetSeries(field, (x0, y0), order, den)
    return jn * jd.inverse()
