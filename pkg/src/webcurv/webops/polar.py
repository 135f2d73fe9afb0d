"""The polar map of a foliation with respect to the invariant line at infinity."""

from dataclasses import dataclass
from itertools import permutations

from ..algebra import QQ, BinaryForm, MultiPoly, linear_factors, normalize_point, point_of_linear, poly_gcd
from ..geometry import foliation_degree, infinity_invariant


@dataclass
class PolarMap:
    P: BinaryForm
    Q: BinaryForm
    chart: str = "line at infinity z = 0"

    @property
    def degree(self):
        return self.P.degree

    @property
    def field(self):
        return self.P.field

    def __call__(self, pt):
        a, b = pt
        return normalize_point((self.P.evaluate(a, b), self.Q.evaluate(a, b)), self.field)

    def fixed_form(self):
        """Binary form y P - x Q whose zeros are the fixed points."""
        x = BinaryForm(self.field, [1, 0])
        y = BinaryForm(self.field, [0, 1])
        return y * self.P - x * self.Q

    def fixed_points(self):
        facs, residual = linear_factors(self.fixed_form())
        return [(point_of_linear(lin), m) for lin, m in facs], residual


def ell_polar_map(F, d=None):
    """(B_d : -A_d) from the top homogeneous parts of F = [A dx + B dy]."""
    if not infinity_invariant(F):
        raise ValueError("the line at infinity is not invariant")
    deg = foliation_degree(F)
    if d is not None and d != deg:
        raise ValueError(f"foliation has degree {deg}, not {d}")
    Ad = F.a.homogeneous_part(deg)
    Bd = F.b.homogeneous_part(deg)
    if not poly_gcd(Ad, Bd).is_constant():
        raise ValueError("top homogeneous parts share a factor")
    P = BinaryForm.from_poly(Bd, deg) if not Bd.is_zero() else BinaryForm(F.field, [0] * (deg + 1))
    Q = BinaryForm.from_poly(-Ad, deg) if not Ad.is_zero() else BinaryForm(F.field, [0] * (deg + 1))
    return PolarMap(P, Q)


def polar_fiber(f, q):
    """Fiber of the polar map over q as [(point, multiplicity)] plus residual."""
    qx, qy = (f.field.coerce(c) for c in q)
    form = f.P * qy - f.Q * qx
    facs, residual = linear_factors(form)
    return [(point_of_linear(lin), m) for lin, m in facs], residual


def _over(form, field):
    return BinaryForm(field, [field.coerce(c) for c in form.coeffs])


def _subst(form, M):
    """form(M (x, y)) for a 2x2 matrix M = ((a, b), (c, d))."""
    f = form.field
    x, y = MultiPoly.x(f), MultiPoly.y(f)
    (a, b), (c, d) = M
    u = x * a + y * b
    v = x * c + y * d
    return BinaryForm.from_poly(form.to_poly().compose(u, v), form.degree) if not form.is_zero() else form


def conjugate(f, M):
    """The map M o f o M^-1 for an invertible 2x2 matrix M."""
    (a, b), (c, d) = M
    adj = ((d, -b), (-c, a))
    P = _subst(f.P, adj)
    Q = _subst(f.Q, adj)
    return PolarMap(_lin(P, Q, a, b), _lin(P, Q, c, d), f.chart)


def _lin(P, Q, s, t):
    f = P.field
    return BinaryForm(f, [s * p + t * q for p, q in zip(P.coeffs, Q.coeffs)])


def moebius_through(src, dst, field):
    """Matrix sending the three points src to dst, in order."""
    def frame(pts):
        (a1, b1), (a2, b2), (a3, b3) = [tuple(field.coerce(c) for c in p) for p in pts]
        det = a1 * b2 - a2 * b1
        if det.is_zero():
            raise ValueError("points are not distinct")
        lam = (a3 * b2 - a2 * b3) / det
        mu = (a1 * b3 - a3 * b1) / det
        return ((lam * a1, mu * a2), (lam * b1, mu * b2))

    (p, q), (r, s) = frame(src)
    det = p * s - q * r
    inv = ((s / det, -q / det), (-r / det, p / det))
    (a, b), (c, d) = frame(dst)
    return ((a * inv[0][0] + b * inv[1][0], a * inv[0][1] + b * inv[1][1]),
            (c * inv[0][0] + d * inv[1][0], c * inv[0][1] + d * inv[1][1]))


def same_map(f, g):
    """Equality of rational maps of P^1 given by (P : Q)."""
    if f.degree != g.degree:
        return False
    lhs = f.P.to_poly() * g.Q.to_poly()
    rhs = f.Q.to_poly() * g.P.to_poly()
    return lhs == rhs


def match_normal_form(f, g):
    """A matrix M with M o f o M^-1 = g, found by sending fixed points to fixed points, or None."""
    field = f.field if f.field != QQ else g.field
    f = PolarMap(_over(f.P, field), _over(f.Q, field), f.chart)
    g = PolarMap(_over(g.P, field), _over(g.Q, field), g.chart)
    fp = [normalize_point(p, field) for p, _m in f.fixed_points()[0]]
    gp = [normalize_point(p, field) for p, _m in g.fixed_points()[0]]
    if len(fp) < 3 or len(gp) < 3:
        raise ValueError("need three field-rational fixed points on each side")
    # a conjugacy sends fp[:3] to some three distinct fixed points of g
    for dst in permutations(gp, 3):
        M = moebius_through(fp[:3], dst, field)
        if same_map(conjugate(f, M), g):
            return M
    return None


__all__ = ["PolarMap", "ell_polar_map", "polar_fiber", "conjugate", "moebius_through",
           "same_map", "match_normal_form"]
