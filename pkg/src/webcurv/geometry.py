"""Forms, vector fields, foliations and webs on the affine chart z = 1."""

from dataclasses import dataclass, field as dc_field
from itertools import combinations

from .algebra import (QQ, BinaryForm, FieldScalar, MultiPoly, RatFunc, field_roots,
                      linear_factors, poly_gcd, resultant)
from .algebra.fields import content_scale
from .algebra.poly import _common_field


def _rf(value, field=QQ):
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, MultiPoly):
        return RatFunc(value)
    return RatFunc.const(field, value)


def _field_of(*items):
    f = QQ
    for it in items:
        f = _common_field(f, it.field)
    return f


class OneForm:
    """a dx + b dy with rational-function coefficients."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        field = _field_of(*(v for v in (a, b) if hasattr(v, "field")))
        self.a = _rf(a, field)
        self.b = _rf(b, field)
        if self.a.is_zero() and self.b.is_zero():
            raise ValueError("the zero 1-form is not allowed")

    @property
    def field(self):
        return _common_field(self.a.field, self.b.field)

    @classmethod
    def d(cls, r):
        """Differential of a rational function."""
        r = _rf(r)
        return cls(r.diff("x"), r.diff("y"))

    def __add__(self, other):
        return OneForm(self.a + other.a, self.b + other.b)

    def __mul__(self, f):
        return OneForm(self.a * f, self.b * f)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, OneForm) and self.a == other.a and self.b == other.b

    def __repr__(self):
        return f"OneForm(({self.a}) dx + ({self.b}) dy)"


class TwoForm:
    """c dx^dy."""

    __slots__ = ("c",)

    def __init__(self, c):
        self.c = _rf(c, c.field if hasattr(c, "field") else QQ)

    @property
    def field(self):
        return self.c.field

    def is_zero(self):
        return self.c.is_zero()

    def __add__(self, other):
        return TwoForm(self.c + other.c)

    def __neg__(self):
        return TwoForm(-self.c)

    def __eq__(self, other):
        return isinstance(other, TwoForm) and self.c == other.c

    def __repr__(self):
        return f"TwoForm(({self.c}) dx^dy)"


class VectorField:
    """u d/dx + v d/dy."""

    __slots__ = ("u", "v")

    def __init__(self, u, v):
        field = _field_of(*(w for w in (u, v) if hasattr(w, "field")))
        self.u = _rf(u, field)
        self.v = _rf(v, field)
        if self.u.is_zero() and self.v.is_zero():
            raise ValueError("the zero vector field is not allowed")

    @classmethod
    def radial(cls, field=QQ):
        x, y = MultiPoly.x(field), MultiPoly.y(field)
        return cls(x, y)


def exterior_d(omega):
    return TwoForm(omega.b.diff("x") - omega.a.diff("y"))


def wedge(w1, w2):
    return TwoForm(w1.a * w2.b - w2.a * w1.b)


def contract(X, omega):
    return omega.a * X.u + omega.b * X.v


# -- foliations ---------------------------------------------------------


def _pair_canonical(a, b):
    lead = a if not a.is_zero() else b
    s = lead.unit_scale()
    a, b = a * s, b * s
    r = content_scale(a.rational_coefficients() + b.rational_coefficients())
    return a * r, b * r


class Foliation:
    """[a dx + b dy] with a, b coprime polynomials in canonical scaling."""

    __slots__ = ("a", "b")

    def __init__(self, a, b, reduce=True):
        field = _common_field(getattr(a, "field", QQ), getattr(b, "field", QQ))
        a = a.over(field) if isinstance(a, MultiPoly) else MultiPoly.const(field, a)
        b = b.over(field) if isinstance(b, MultiPoly) else MultiPoly.const(field, b)
        if a.is_zero() and b.is_zero():
            raise ValueError("the zero 1-form does not define a foliation")
        if reduce:
            g = poly_gcd(a, b)
            if not g.is_constant():
                a, b = a.exquo(g), b.exquo(g)
        self.a, self.b = _pair_canonical(a, b)

    @property
    def field(self):
        return self.a.field

    @classmethod
    def from_form(cls, omega):
        """Clear the denominators of a OneForm."""
        da, db = omega.a.den, omega.b.den
        g = poly_gcd(da, db)
        lcm = da * db.exquo(g)
        return cls(omega.a.num * lcm.exquo(da), omega.b.num * lcm.exquo(db))

    @classmethod
    def d(cls, r):
        """Level-set foliation of a rational function."""
        return cls.from_form(OneForm.d(r))

    @classmethod
    def pencil(cls, point, field=None):
        """Lines through a projective point [p0:p1:p2]."""
        f = field or _field_of(*(c for c in point if isinstance(c, FieldScalar)))
        p0, p1, p2 = (f.coerce(c) for c in point)
        x, y = MultiPoly.x(f), MultiPoly.y(f)
        if p2.is_zero():
            if p0.is_zero() and p1.is_zero():
                raise ValueError("[0:0:0] is not a point")
            return cls(MultiPoly.const(f, p1), MultiPoly.const(f, -p0))
        x0, y0 = p0 / p2, p1 / p2
        return cls(y - y0, -(x - x0))

    def form(self):
        return OneForm(self.a, self.b)

    def over(self, field):
        return Foliation(self.a.over(field), self.b.over(field), reduce=False)

    def __eq__(self, other):
        return isinstance(other, Foliation) and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"Foliation[({self.a}) dx + ({self.b}) dy]"


class Web:
    """Ordered list of pairwise distinct foliations."""

    def __init__(self, foliations):
        fols = list(foliations)
        if not fols:
            raise ValueError("a web needs at least one foliation")
        field = QQ
        for f in fols:
            field = _common_field(field, f.field)
        fols = [f.over(field) for f in fols]
        for i, j in combinations(range(len(fols)), 2):
            if fols[i] == fols[j]:
                raise ValueError(f"foliations {i} and {j} coincide")
        self.foliations = tuple(fols)
        self.field = field

    def __len__(self):
        return len(self.foliations)

    def __iter__(self):
        return iter(self.foliations)

    def __getitem__(self, i):
        return self.foliations[i]

    def __add__(self, other):
        extra = other.foliations if isinstance(other, Web) else (other,)
        return Web(self.foliations + tuple(extra))

    def without(self, i):
        return Web(self.foliations[:i] + self.foliations[i + 1:])

    def __eq__(self, other):
        return isinstance(other, Web) and self.foliations == other.foliations

    def __repr__(self):
        return f"Web({len(self)} foliations over {self.field.label})"


@dataclass
class CDQLWeb:
    """Pencils through the points of P plus one non-linear foliation."""

    linear_points: list
    nonlinear: Foliation
    label: str = ""
    expected_rank: int = None
    field: object = None

    def __post_init__(self):
        if self.field is None:
            f = self.nonlinear.field
            for pt in self.linear_points:
                for c in pt:
                    if isinstance(c, FieldScalar):
                        f = _common_field(f, c.field)
            self.field = f
        pts = [tuple(self.field.coerce(c) for c in p) for p in self.linear_points]
        seen = []
        for p in pts:
            n = _normalize_p2(p)
            if n in seen:
                raise ValueError("linear points must be pairwise distinct")
            seen.append(n)
        self.linear_points = pts
        self.nonlinear = self.nonlinear.over(self.field)
        if foliation_degree(self.nonlinear) < 1:
            raise ValueError("the non-linear foliation must have degree >= 1")

    def pencils(self):
        return [Foliation.pencil(p, self.field) for p in self.linear_points]

    def web(self):
        return Web(self.pencils() + [self.nonlinear])

    def __len__(self):
        return len(self.linear_points) + 1


def _normalize_p2(p):
    for c in reversed(p):
        if not c.is_zero():
            return tuple(v / c for v in p)
    raise ValueError("[0:0:0] is not a point")


@dataclass
class Divisor:
    components: list = dc_field(default_factory=list)

    def __post_init__(self):
        for h, m in self.components:
            if h.is_constant() or m < 1:
                raise ValueError("divisor components must be non-constant with positive multiplicity")
        for (h1, _), (h2, _) in combinations(self.components, 2):
            if not poly_gcd(h1, h2).is_constant():
                raise ValueError("divisor components must be pairwise coprime")

    def polynomial(self):
        out = None
        for h, m in self.components:
            out = h ** m if out is None else out * h ** m
        return out


# -- maps ---------------------------------------------------------------


class ProjectiveMap:
    """(x, y) -> ((m00 x + m01 y + m02)/(m20 x + m21 y + m22), (m10 x + ...)/(...)).

    An affine map has last row (0, 0, 1).
    """

    def __init__(self, matrix, field=None):
        f = field or _field_of(*(c for row in matrix for c in row if isinstance(c, FieldScalar)))
        self.field = f
        self.matrix = tuple(tuple(f.coerce(c) for c in row) for row in matrix)
        if self.det().is_zero():
            raise ValueError("singular map")

    @classmethod
    def affine(cls, lin, shift=(0, 0), field=None):
        (a, b), (c, d) = lin
        return cls(((a, b, shift[0]), (c, d, shift[1]), (0, 0, 1)), field)

    @classmethod
    def identity(cls, field=QQ):
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)), field)

    def det(self):
        m = self.matrix
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    def is_affine(self):
        r = self.matrix[2]
        return r[0].is_zero() and r[1].is_zero()

    def compose(self, other):
        """self o other."""
        f = _common_field(self.field, other.field)
        a, b = self.matrix, other.matrix
        m = [[sum((a[i][k] * b[k][j] for k in range(3)), f.zero()) for j in range(3)] for i in range(3)]
        return ProjectiveMap(m, f)

    def components(self):
        f = self.field
        x, y = MultiPoly.x(f), MultiPoly.y(f)
        rows = [r[0] * x + r[1] * y + r[2] for r in self.matrix]
        return RatFunc(rows[0], rows[2]), RatFunc(rows[1], rows[2])

    def __call__(self, point):
        x0, y0 = (self.field.coerce(c) for c in point)
        rows = [r[0] * x0 + r[1] * y0 + r[2] for r in self.matrix]
        if rows[2].is_zero():
            raise ZeroDivisionError("point sent to the line at infinity")
        return rows[0] / rows[2], rows[1] / rows[2]


def pullback(phi, obj):
    """phi^* of a RatFunc, MultiPoly, OneForm, TwoForm, Foliation or Web."""
    X, Y = phi.components()
    if isinstance(obj, Web):
        return Web([pullback(phi, f) for f in obj])
    if isinstance(obj, Foliation):
        return Foliation.from_form(pullback(phi, obj.form()))
    if isinstance(obj, RatFunc):
        return obj.compose(X, Y)
    if isinstance(obj, MultiPoly):
        r = RatFunc(obj).compose(X, Y)
        return r.num
    if isinstance(obj, OneForm):
        a = obj.a.compose(X, Y)
        b = obj.b.compose(X, Y)
        return OneForm(a * X.diff("x") + b * Y.diff("x"), a * X.diff("y") + b * Y.diff("y"))
    if isinstance(obj, TwoForm):
        jac = X.diff("x") * Y.diff("y") - X.diff("y") * Y.diff("x")
        return TwoForm(obj.c.compose(X, Y) * jac)
    raise TypeError(f"cannot pull back {type(obj).__name__}")


# -- tangency and invariance ------------------------------------------------


def sigma(f, g):
    """Coefficient of dx^dy in omega_f ^ omega_g."""
    return f.a * g.b - g.a * f.b


def tangency(F, G):
    t = sigma(F, G)
    if t.is_zero():
        raise ValueError("tangency of a foliation with itself")
    return t.normalized()


def squarefree_part(p):
    g = poly_gcd(poly_gcd(p, p.diff("x")), p.diff("y"))
    return p.exquo(g).normalized()


def discriminant(W):
    if len(W) < 2:
        raise ValueError("discriminant needs at least two foliations")
    prod = MultiPoly.one(W.field)
    for F, G in combinations(W.foliations, 2):
        t = tangency(F, G)
        if not t.is_constant():
            prod = prod * squarefree_part(t)
    if prod.is_constant():
        return MultiPoly.one(W.field)
    return squarefree_part(prod)


def is_invariant(h, F):
    if h.is_constant():
        raise ValueError("invariance of a constant curve")
    Xh = F.b * h.diff("x") - F.a * h.diff("y")
    return h.divides(Xh)


def is_first_integral(R, F):
    R = _rf(R, F.field)
    if R.is_constant():
        raise ValueError("a constant is not a first integral")
    n, d = R.num, R.den
    # dR ^ omega = 0 iff (n_x d - n d_x) b - (n_y d - n d_y) a = 0
    expr = (n.diff("x") * d - n * d.diff("x")) * F.b - (n.diff("y") * d - n * d.diff("y")) * F.a
    return expr.is_zero()


def foliation_degree(F):
    """Degree of F as a foliation of P^2."""
    n = max(F.a.degree(), F.b.degree())
    top = MultiPoly.x(F.field) * F.a.homogeneous_part(n) + MultiPoly.y(F.field) * F.b.homogeneous_part(n)
    if top.is_zero():
        return n - 1
    return n


def infinity_invariant(F):
    """True iff the line at infinity is F-invariant."""
    n = max(F.a.degree(), F.b.degree())
    top = MultiPoly.x(F.field) * F.a.homogeneous_part(n) + MultiPoly.y(F.field) * F.b.homogeneous_part(n)
    return not top.is_zero()


def pencil_foliation(F, G):
    """Foliation of the pencil <F, G>: F dG - G dF with common factors removed."""
    if not poly_gcd(F, G).is_constant():
        raise ValueError("pencil generators must be coprime")
    a = F * G.diff("x") - G * F.diff("x")
    b = F * G.diff("y") - G * F.diff("y")
    return Foliation(a, b)


def darboux_degree(e, multiple_fibers=()):
    """2e - 2 - sum deg(H)(e(H) - 1) over the caller-listed multiple fibers."""
    return 2 * e - 2 - sum(h.degree() * (m - 1) for h, m in multiple_fibers)


# -- singular points -----------------------------------------------------


def _swap_to_x(p):
    """A polynomial in y only, rewritten as a polynomial in x."""
    f = p.field
    return p.compose(MultiPoly.y(f), MultiPoly.x(f))


@dataclass
class SingularSet:
    points: list
    residual: tuple

    @property
    def complete(self):
        return all(r.is_constant() for r in self.residual)


def _strip_rational(u):
    """u with its field-rational roots divided out."""
    if u.is_constant():
        return u
    out = u
    x = MultiPoly.x(u.field)
    for r, m in field_roots(u):
        out = out.exquo((x - r) ** m)
    return out.normalized()


def singular_points(F):
    a, b = F.a, F.b
    f = F.field
    if a.is_zero() or b.is_zero() or a.is_constant() or b.is_constant():
        one = MultiPoly.one(f)
        return SingularSet([], (one, one))
    x = MultiPoly.x(f)
    y = MultiPoly.y(f)
    ry = resultant(a, b, "y") if (a.degree_in("y") > 0 or b.degree_in("y") > 0) else poly_gcd(a, b)
    rx = resultant(a, b, "x") if (a.degree_in("x") > 0 or b.degree_in("x") > 0) else poly_gcd(a, b)
    points = []
    for x0, _m in (field_roots(ry) if not ry.is_constant() else []):
        ax = a.compose(MultiPoly.const(f, x0), y)
        bx = b.compose(MultiPoly.const(f, x0), y)
        if ax.is_zero():
            g = bx
        elif bx.is_zero():
            g = ax
        else:
            g = poly_gcd(ax, bx)
        if g.is_constant():
            continue
        for y0, _k in field_roots(_swap_to_x(g)):
            points.append((x0, y0))
    ryx = _strip_rational(ry)
    rxx = _strip_rational(_swap_to_x(rx))
    return SingularSet(points, (ryx, rxx))


@dataclass
class LinearPart:
    matrix: tuple
    trace: FieldScalar
    det: FieldScalar
    eigenvalues: list
    ratios: list

    def charpoly(self):
        return (self.det.field.one(), -self.trace, self.det)


def linear_part(F, p):
    """Jacobian at p of the tangent vector field (b, -a) with eigenvalue data."""
    f = F.field
    x0, y0 = (f.coerce(c) for c in p)
    if not (F.a.evaluate(x0, y0).is_zero() and F.b.evaluate(x0, y0).is_zero()):
        raise ValueError("point is not singular")
    m = ((F.b.diff("x").evaluate(x0, y0), F.b.diff("y").evaluate(x0, y0)),
         (-F.a.diff("x").evaluate(x0, y0), -F.a.diff("y").evaluate(x0, y0)))
    tr = m[0][0] + m[1][1]
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    x = MultiPoly.x(f)
    eig = [r for r, _ in field_roots(x * x - x * tr + det)] if True else []
    ratios = []
    if not det.is_zero():
        q = tr * tr / det - 2
        for r, _ in field_roots(x * x - x * q + 1):
            ratios.append(r)
    return LinearPart(m, tr, det, eig, ratios)


def tangent_slope_binary(W):
    """Implicit equation of W: binary form in (A, B) vanishing on [A dx + B dy] directions.

    Returned as a dict mapping (i, j) -> MultiPoly coefficient of A^i B^j.
    """
    coeffs = {(0, 0): MultiPoly.one(W.field)}
    for F in W:
        # factor (b A - a B)
        new = {}
        for (i, j), c in coeffs.items():
            new[(i + 1, j)] = new.get((i + 1, j), MultiPoly.zero(W.field)) + c * F.b
            new[(i, j + 1)] = new.get((i, j + 1), MultiPoly.zero(W.field)) - c * F.a
        coeffs = new
    return coeffs


def binary_forms_at(W, point):
    """Directions of W at a point as a BinaryForm in (A, B)."""
    f = W.field
    x0, y0 = (f.coerce(c) for c in point)
    k = len(W)
    coeffs = tangent_slope_binary(W)
    return BinaryForm(f, [coeffs.get((k - m, m), MultiPoly.zero(f)).evaluate(x0, y0) for m in range(k + 1)])


__all__ = [
    "OneForm", "TwoForm", "VectorField", "Foliation", "Web", "CDQLWeb", "Divisor",
    "ProjectiveMap", "exterior_d", "wedge", "contract", "pullback", "sigma", "tangency",
    "discriminant", "is_invariant", "is_first_integral", "foliation_degree",
    "infinity_invariant", "pencil_foliation", "darboux_degree", "singular_points",
    "linear_part", "squarefree_part", "LinearPart", "SingularSet", "linear_factors",
]
