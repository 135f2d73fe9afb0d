"""Barycenters of points on P^1, of foliations, and the symmetric barycenter map."""

import random
from fractions import Fraction

import flint

from ..algebra import (INFINITY, QQ, BinaryForm, FieldScalar, MultiPoly, NumberField,
                       linear_factors, normalize_point, point_of_linear, resultant)
from ..algebra.poly import _common_field
from ..geometry import Foliation, Web, tangent_slope_binary


def _sig(v, w):
    return v[0] * w[1] - v[1] * w[0]


def _field_of_points(pts):
    f = QQ
    for p in pts:
        for c in p:
            if isinstance(c, FieldScalar):
                f = _common_field(f, c.field)
    return f


def barycenter_point(v, pts, field=None):
    """Projectivized sum of prod_{j != i} sigma(v, v_j) v_i."""
    f = field or _field_of_points([v] + list(pts))
    v = tuple(f.coerce(c) for c in v)
    pts = [tuple(f.coerce(c) for c in p) for p in pts]
    sig = [_sig(v, p) for p in pts]
    ax, ay = f.zero(), f.zero()
    for i, p in enumerate(pts):
        w = f.one()
        for j, s in enumerate(sig):
            if j != i:
                w = w * s
        ax = ax + w * p[0]
        ay = ay + w * p[1]
    if ax.is_zero() and ay.is_zero():
        raise ValueError("barycenter vanishes: the configuration is degenerate with respect to v")
    return normalize_point((ax, ay), f)


def barycenter_foliation(F, W):
    """beta_F(W) through the implicit equation of W.

    With G(A, B) = prod (b_i A - a_i B), the barycenter is
    [G_B(a, b) dx - G_A(a, b) dy] for F = [a dx + b dy].
    """
    if not isinstance(W, Web):
        W = Web(W)
    field = _common_field(F.field, W.field)
    F = F.over(field)
    W = Web([G.over(field) for G in W])
    if any(F == G for G in W):
        raise ValueError("F is one of the foliations of W")
    coeffs = tangent_slope_binary(W)
    zero = MultiPoly.zero(field)
    ga, gb = zero, zero
    apow = [MultiPoly.one(field)]
    bpow = [MultiPoly.one(field)]
    for _ in range(len(W)):
        apow.append(apow[-1] * F.a)
        bpow.append(bpow[-1] * F.b)
    for (i, j), c in coeffs.items():
        if c.is_zero():
            continue
        if i:
            ga = ga + c * apow[i - 1] * bpow[j] * i
        if j:
            gb = gb + c * apow[i] * bpow[j - 1] * j
    if ga.is_zero() and gb.is_zero():
        raise ValueError("barycenter is undefined: dF/dp vanishes identically")
    return Foliation(gb, -ga)


def barycenter_web(W):
    """Replace each member by its barycenter with respect to the others."""
    if not isinstance(W, Web):
        W = Web(W)
    return Web([barycenter_foliation(W[i], W.without(i)) for i in range(len(W))])


# -- configurations -------------------------------------------------------


class Configuration:
    """k points of P^1 held as the binary form vanishing on them."""

    def __init__(self, form):
        if form.is_zero():
            raise ValueError("zero form is not a configuration")
        self.form = form.normalized()

    @classmethod
    def from_points(cls, pts, field=None):
        f = field or _field_of_points(pts)
        form = BinaryForm(f, [1])
        for p in pts:
            form = form * BinaryForm.linear_through(f, p)
        return cls(form)

    @property
    def field(self):
        return self.form.field

    @property
    def degree(self):
        return self.form.degree

    def points(self):
        """[(point, multiplicity)] for field-rational points; None if some escape."""
        facs, residual = linear_factors(self.form)
        if residual.degree > 0:
            return None
        return [(point_of_linear(lin), m) for lin, m in facs]

    def multiplicities(self):
        pts = self.points()
        return None if pts is None else sorted(m for _, m in pts)

    def transform(self, g):
        """Image under the Moebius map [x:y] -> [g00 x + g01 y : g10 x + g11 y]."""
        (a, b), (c, d) = g
        f = self.field
        # pull the form back by g^{-1}
        x, y = MultiPoly.x(f), MultiPoly.y(f)
        det = f.coerce(a) * d - f.coerce(b) * c
        if det.is_zero():
            raise ValueError("singular transformation")
        px = x * d - y * b
        py = y * a - x * c
        return Configuration(BinaryForm.from_poly(self.form.to_poly().compose(px, py), self.degree))

    def __eq__(self, other):
        return isinstance(other, Configuration) and self.form == other.form

    def __hash__(self):
        return hash(self.form)

    def __repr__(self):
        return f"Configuration({self.form.to_poly()})"


def _symbary_affine(form):
    """Resultant formula in the chart y = 1 when [1:0] is not a point of the form."""
    f = form.field
    k = form.degree
    p = form.dehomogenize()  # polynomial in x, plays the role of z
    lc = p.coefficient(k, 0)
    p = p * lc.inverse()
    t = MultiPoly.y(f)
    x = MultiPoly.x(f)
    q = (t - x) * p.diff("x").diff("x") + p.diff("x") * (2 * (k - 1))
    r = resultant(p, q, "x")  # polynomial in y
    cs = [r.coefficient(0, j) for j in range(k + 1)]
    # r(t) = sum c_j t^j  <->  sum c_j x^j y^(k-j)
    return BinaryForm(f, [cs[k - m] for m in range(k + 1)])


def barycenter_config(c):
    k = c.degree
    if k < 2:
        raise ValueError("symmetric barycenter needs k >= 2")
    f = c.field
    if not c.form.coeffs[0].is_zero():
        return Configuration(_symbary_affine(c.form))
    # move every point off [1:0] and come back
    for shift in range(1, 50):
        g = ((1, 0), (shift, 1))  # [x:y] -> [x : shift x + y]
        moved = c.transform(g)
        if not moved.form.coeffs[0].is_zero():
            out = Configuration(_symbary_affine(moved.form))
            return out.transform(((1, 0), (-shift, 1)))
    raise RuntimeError("no affine chart found")


def cross_ratio(p1, p2, p3, p4):
    return (_sig(p1, p3) * _sig(p2, p4)) / (_sig(p1, p4) * _sig(p2, p3))


def j_from_lambda(lam):
    num = (lam * lam - lam + 1) ** 3 * 256
    den = lam * lam * (lam - 1) ** 2
    if den.is_zero():
        raise ValueError("degenerate cross-ratio")
    return num / den


def quartic_invariants(form):
    """I and J of a binary quartic a x^4 + 4b x^3y + 6c x^2y^2 + 4d xy^3 + e y^4."""
    if form.degree != 4:
        raise ValueError("expected a binary quartic")
    a0, a1, a2, a3, a4 = form.coeffs
    a, b, c, d, e = a0, a1 / 4, a2 / 6, a3 / 4, a4
    I = a * e - b * d * 4 + c * c * 3
    J = a * c * e + b * c * d * 2 - a * d * d - e * b * b - c * c * c
    return I, J


def j_invariant_quartic(form):
    """1728 I^3 / (I^3 - 27 J^2); this matches the cross-ratio route."""
    I, J = quartic_invariants(form)
    disc = I ** 3 - J * J * 27
    if disc.is_zero():
        raise ValueError("repeated points")
    return I ** 3 * 1728 / disc


def j_invariant(c):
    """j of four distinct points, normalized so the harmonic quadruple has j = 1728."""
    if not isinstance(c, Configuration):
        c = Configuration.from_points(c)
    if c.degree != 4:
        raise ValueError("j-invariant needs exactly four points")
    pts = c.points()
    if pts is None:
        return j_invariant_quartic(c.form)
    if any(m > 1 for _, m in pts):
        raise ValueError("repeated points")
    p = [pt for pt, _ in pts]
    return j_from_lambda(cross_ratio(*p))


# -- the degree five map on j ----------------------------------------------

# z = j/256 = (l^2 - l + 1)^3 / (l^2 (l - 1)^2) is the coordinate in which beta_* is written
J_TO_Z = Fraction(1, 256)
BETA_STAR_NUM = flint.fmpq_poly([0, 0, 540 ** 3, 3 * 540 ** 2, 3 * 540, 1])  # z^2 (z+540)^3
BETA_STAR_DEN = flint.fmpq_poly([-216, 5]) ** 4


def _beta_star_eval(z, num=BETA_STAR_NUM, den=BETA_STAR_DEN):
    """Apply num/den to a point of P^1 given as a FieldScalar or INFINITY."""
    if z is INFINITY:
        return INFINITY if num.degree() > den.degree() else None
    f = z.field
    n = _eval_poly(num, z)
    d = _eval_poly(den, z)
    if d.is_zero():
        return INFINITY
    return n / d


def _eval_poly(poly, z):
    out = z.field.zero()
    for c in reversed(poly.coeffs()):
        out = out * z + Fraction(int(c.p), int(c.q))
    return out


def critical_orbits(num=BETA_STAR_NUM, den=BETA_STAR_DEN, max_steps=200):
    """Forward orbits of all critical points of num/den, grouped by Galois orbit.

    Each critical point is represented generically: for an irreducible factor
    h of the critical polynomial we iterate a root of h inside Q[t]/h.
    Returns a list of dicts with the factor, its multiplicity, the orbit and
    whether it closed up.
    """
    wr = num.derivative() * den - num * den.derivative()
    results = []
    _c, facs = wr.factor()
    for h, m in facs:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in h.coeffs()]
        lc = coeffs[-1]
        coeffs = [c / lc for c in coeffs]
        field = QQ if len(coeffs) == 2 else NumberField(coeffs, f"Q[t]/({h})")
        z = field.coerce(-coeffs[0]) if field is QQ else field.gen()
        results.append(_orbit(z, h, m, num, den, max_steps))
    # critical point at infinity when the degree gap exceeds one
    gap = abs(num.degree() - den.degree())
    if gap > 1:
        results.append(_orbit(INFINITY, None, gap - 1, num, den, max_steps))
    return results


def _orbit(z, factor, mult, num, den, max_steps):
    seen = []
    cur = z
    for _ in range(max_steps):
        if any(_same(cur, s) for s in seen):
            return {"factor": factor, "multiplicity": mult, "orbit": seen, "finite": True}
        seen.append(cur)
        cur = _beta_star_eval(cur, num, den)
        if cur is None:
            break
    return {"factor": factor, "multiplicity": mult, "orbit": seen, "finite": False}


def _same(a, b):
    if a is INFINITY or b is INFINITY:
        return a is b
    return a == b


def beta_star_probe(seed=0, samples=20):
    """Evidence that the symmetric barycenter descends to the j-line."""
    rng = random.Random(seed)
    pairs = []
    for _ in range(samples):
        while True:
            pts = [(rng.randint(-9, 9), 1) for _ in range(4)]
            if len({p[0] for p in pts}) == 4:
                break
        g = ((rng.randint(-5, 5), rng.randint(-5, 5)), (rng.randint(-5, 5), rng.randint(-5, 5)))
        if g[0][0] * g[1][1] - g[0][1] * g[1][0] == 0:
            g = ((1, 1), (0, 1))
        c1 = Configuration.from_points(pts)
        order = list(pts)
        rng.shuffle(order)
        c2 = Configuration.from_points(order).transform(g)
        j1, j2 = j_invariant(c1), j_invariant(c2)
        b1, b2 = _j_or_inf(barycenter_config(c1)), _j_or_inf(barycenter_config(c2))
        # in the coordinate z = j/256 the induced map is beta_* itself
        z = _beta_star_eval(j1 * J_TO_Z)
        explicit = _same(z, INFINITY if b1 is INFINITY else b1 * J_TO_Z)
        pairs.append({"j": (j1, j2), "j_beta": (b1, b2), "equal": j1 == j2 and _same(b1, b2),
                      "explicit": explicit})
    orbits = critical_orbits()
    return {
        "semiconjugacy": pairs,
        "semiconjugacy_ok": all(p["equal"] for p in pairs),
        "explicit_coordinate_ok": all(p["explicit"] for p in pairs),
        "max_orbit_length": max(len(o["orbit"]) for o in orbits),
        "map_degree": max(BETA_STAR_NUM.degree(), BETA_STAR_DEN.degree()),
        "critical_orbits": orbits,
        "post_critically_finite": all(o["finite"] for o in orbits),
    }


def _j_or_inf(c):
    try:
        return j_invariant(c)
    except ValueError:
        return INFINITY


__all__ = ["barycenter_point", "barycenter_foliation", "barycenter_web", "Configuration",
           "barycenter_config", "cross_ratio", "j_from_lambda", "quartic_invariants",
           "j_invariant_quartic", "j_invariant", "critical_orbits", "beta_star_probe", "J_TO_Z"]
