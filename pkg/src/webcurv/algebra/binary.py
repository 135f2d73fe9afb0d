"""Binary forms, univariate root extraction over a number field, Sylvester resultants."""

import flint

from .fields import FieldScalar, _fmpq
from .poly import MultiPoly, _common_field, _reduce, _ugcd, _monic_uni


class BinaryForm:
    """Homogeneous polynomial sum(coeffs[m] * x^(n-m) * y^m)."""

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field, coeffs):
        cs = [field.coerce(c) for c in coeffs]
        if not cs:
            raise ValueError("a binary form needs at least one coefficient")
        self.field = field
        self.coeffs = tuple(cs)
        self.degree = len(cs) - 1

    @classmethod
    def from_poly(cls, p, degree=None):
        if not p.is_homogeneous():
            raise ValueError("polynomial is not homogeneous")
        n = p.degree() if degree is None else degree
        if n < 0:
            raise ValueError("the zero form needs an explicit degree")
        return cls(p.field, [p.coefficient(n - m, m) for m in range(n + 1)])

    @classmethod
    def linear_through(cls, field, point):
        """The linear form b*x - a*y vanishing at [a:b], normalized."""
        a, b = (field.coerce(c) for c in point)
        if b.is_zero():
            if a.is_zero():
                raise ValueError("[0:0] is not a point")
            return cls(field, [0, 1])
        return cls(field, [1, -(a / b)])

    def to_poly(self):
        n = self.degree
        return MultiPoly(self.field, {(n - m, m): c for m, c in enumerate(self.coeffs)})

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def evaluate(self, a, b):
        a = self.field.coerce(a)
        b = self.field.coerce(b)
        n = self.degree
        total = self.field.zero()
        for m, c in enumerate(self.coeffs):
            if not c.is_zero():
                total = total + c * a ** (n - m) * b ** m
        return total

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            return BinaryForm.from_poly(self.to_poly() * other.to_poly(), self.degree + other.degree)
        return BinaryForm(self.field, [c * other for c in self.coeffs])

    __rmul__ = __mul__

    def __add__(self, other):
        if other.degree != self.degree:
            raise ValueError("adding binary forms of different degrees")
        field = _common_field(self.field, other.field)
        return BinaryForm(field, [field.coerce(a) + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return self + (other * -1)

    def __neg__(self):
        return self * -1

    def __pow__(self, n):
        out = BinaryForm(self.field, [1])
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, BinaryForm) and self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def diff(self, var):
        if self.degree == 0:
            return BinaryForm(self.field, [0])
        return BinaryForm.from_poly(self.to_poly().diff(var), self.degree - 1)

    def proportional(self, other):
        """True iff the forms agree up to a nonzero scalar."""
        if self.degree != other.degree:
            return False
        a = self.to_poly()
        b = other.to_poly()
        if a.is_zero() or b.is_zero():
            return a.is_zero() and b.is_zero()
        return a.normalized() == b.normalized()

    def normalized(self):
        return BinaryForm.from_poly(self.to_poly().normalized(), self.degree)

    def dehomogenize(self):
        """f(x, 1) as a univariate MultiPoly in x."""
        n = self.degree
        return MultiPoly(self.field, {(n - m, 0): c for m, c in enumerate(self.coeffs)})

    def __repr__(self):
        return f"BinaryForm({self.to_poly()}, degree={self.degree})"


def sylvester_matrix(p, q):
    m, n = p.degree, q.degree
    size = m + n
    zero = p.field.zero()
    rows = []
    for r in range(n):
        rows.append([zero] * r + list(p.coeffs) + [zero] * (size - m - 1 - r))
    for r in range(m):
        rows.append([zero] * r + list(q.coeffs) + [zero] * (size - n - 1 - r))
    return rows


def determinant(rows, field):
    """Gaussian elimination over the field."""
    a = [list(r) for r in rows]
    n = len(a)
    det = field.one()
    for c in range(n):
        pivot = next((r for r in range(c, n) if not a[r][c].is_zero()), None)
        if pivot is None:
            return field.zero()
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det = det * a[c][c]
        inv = a[c][c].inverse()
        for r in range(c + 1, n):
            if a[r][c].is_zero():
                continue
            f = a[r][c] * inv
            a[r] = [a[r][k] - f * a[c][k] if k >= c else a[r][k] for k in range(n)]
    return det


def sylvester_resultant(p, q):
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero form")
    field = _common_field(p.field, q.field)
    if p.degree + q.degree == 0:
        return field.one()
    return determinant(sylvester_matrix(p, q), field)


# -- univariate roots ---------------------------------------------------


def _uni_diff(u):
    return MultiPoly._raw(u.field, u._p.derivative(0))


def uni_gcd(a, b):
    return MultiPoly._raw(a.field, _ugcd(a.field, a._p, b._p, 0))


def squarefree_part(u):
    g = uni_gcd(u, _uni_diff(u))
    return u.exquo(g)


def _norm(u):
    """Norm of a univariate polynomial over the field, as an fmpq_poly."""
    field = u.field
    if field.degree == 1:
        poly = u._p
    else:
        poly = field._mt.resultant(u._p, "t")
    coeffs = {}
    for (i, _j, _k), c in poly.terms():
        coeffs[i] = c
    return flint.fmpq_poly([coeffs.get(i, 0) for i in range(max(coeffs) + 1)]) if coeffs else flint.fmpq_poly([0])


def _from_fmpq_poly(field, poly):
    return MultiPoly._raw(field, field.ctx.from_dict(
        {(i, 0, 0): c for i, c in enumerate(poly.coeffs()) if c}))


def field_roots(u):
    """Roots in the base field of a univariate polynomial in x, with multiplicities."""
    if u.is_zero():
        raise ValueError("roots of the zero polynomial")
    if u.degree_in("y") > 0:
        raise ValueError("expected a polynomial in x only")
    field = u.field
    if u.degree_in("x") <= 0:
        return []
    sf = squarefree_part(u)
    roots = []
    if field.degree == 1:
        for fac, _e in _norm(sf).factor()[1]:
            if fac.degree() == 1:
                c = fac.coeffs()
                roots.append(FieldScalar(field, -c[0] / c[1]))
    else:
        roots = _trager_roots(sf)
    out = []
    x = MultiPoly.x(field)
    for r in roots:
        lin = x - r
        m = 0
        v = u
        while True:
            quo, ok = v.divmod_exact(lin)
            if not ok:
                break
            v = quo
            m += 1
        assert m > 0, "root extraction produced a non-root"
        out.append((r, m))
    return out


def _trager_roots(u):
    field = u.field
    alpha = field.gen()
    x = MultiPoly.x(field)
    shift = 0
    while True:
        v = u.compose(x - alpha * shift, MultiPoly.y(field)) if shift else u
        n = _norm(v)
        if n.gcd(n.derivative()).degree() == 0:
            break
        shift += 1
        if shift > 50:
            raise RuntimeError("no separating shift found")
    roots = []
    for fac, _e in n.factor()[1]:
        if fac.degree() != field.degree:
            continue
        g = uni_gcd(v, _from_fmpq_poly(field, fac))
        if g.degree_in("x") == 1:
            c1 = g.coefficient(1, 0)
            c0 = g.coefficient(0, 0)
            roots.append(-c0 / c1 - alpha * shift)
    return roots


def linear_factors(f):
    """Field-rational linear factors of a binary form.

    Returns ([(linear BinaryForm, multiplicity), ...], residual BinaryForm)
    with the product of factors times residual equal to f.
    """
    if f.is_zero():
        raise ValueError("linear factors of the zero form")
    field = f.field
    n = f.degree
    u = f.dehomogenize()
    factors = []
    at_inf = n - max(u.degree_in("x"), 0)
    if at_inf:
        factors.append((BinaryForm(field, [0, 1]), at_inf))
    if u.degree_in("x") > 0:
        for r, m in field_roots(u):
            factors.append((BinaryForm(field, [1, -r]), m))
    prod = f.to_poly()
    for lin, m in factors:
        prod = prod.exquo(lin.to_poly() ** m)
    residual = BinaryForm.from_poly(prod, n - sum(m for _l, m in factors))
    return factors, residual


def point_of_linear(lin):
    """The point [a:b] where the linear form vanishes."""
    c0, c1 = lin.coeffs
    # c0*x + c1*y = 0 at [-c1 : c0]
    if c0.is_zero():
        return (lin.field.one(), lin.field.zero())
    return (-c1 / c0, lin.field.one())


def normalize_point(pt, field):
    """Scale a P^1 point so its last nonzero coordinate is 1."""
    a, b = (field.coerce(c) for c in pt)
    if not b.is_zero():
        return (a / b, field.one())
    if a.is_zero():
        raise ValueError("[0:0] is not a point")
    return (field.one(), field.zero())
