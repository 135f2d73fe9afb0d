"""The classified CDQL webs of the projective plane with their expected invariants."""

from dataclasses import dataclass, field as dc_field

from .abelrel import (LogBasis, LogExpression, RelationCandidate, _small_points, jet_rank,
                      pencil_first_integral, pi_bound, series_first_integral, solve_linear)
from .algebra import (QQ, QQ_XI3, BinaryForm, MultiPoly, RatFunc, cyclotomic_field,
                      normalize_point, quadratic_field, root_of_unity, taylor_jet)
from .geometry import CDQLWeb, Foliation, discriminant, is_first_integral
from .webops import PolarMap, barycenter_point, ell_polar_map, match_normal_form, polar_fiber

SPORADIC = ("A5a", "A5b", "A5c", "A5d", "A6a", "A6b", "A7", "B5", "B6", "B7", "B8", "H5", "H10")
FLAT_NONEXCEPTIONAL = ("deg2_a3h", "deg3_a", "deg4_a")
FAMILIES = {"A_I": 4, "A_II": 3, "A_III": 2, "A_IV": 1}
TORI = ("E_tau", "E5", "E6", "E7")
TABLE1 = ("a1", "a2", "a3", "a4", "b1", "c1", "c2")


class NotSupported(LookupError):
    pass


@dataclass
class CatalogEntry:
    id: str
    web: CDQLWeb
    field: object
    expected_flat: bool = True
    expected_rank: int = None
    first_integral: RatFunc = None
    relations: list = dc_field(default_factory=list)
    polar_row: str = None
    note: str = ""

    @property
    def k(self):
        return len(self.web)

    def foliations(self):
        return self.web.web()

    def first_integrals(self, base, order=12):
        """One first integral per foliation, regular at base."""
        out = [pencil_first_integral(p, base, self.field) for p in self.web.linear_points]
        if self.first_integral is not None:
            out.append(self.first_integral)
        else:
            out.append(series_first_integral(self.web.nonlinear, base, order))
        return out

    def base_point(self):
        W = self.foliations()
        disc = discriminant(W)
        f = self.field
        F = self.web.nonlinear
        for pt in _small_points():
            p = (f.coerce(pt[0]), f.coerce(pt[1]))
            if disc.evaluate(*p).is_zero():
                continue
            if F.a.evaluate(*p).is_zero() and F.b.evaluate(*p).is_zero():
                continue
            if self.first_integral is not None:
                try:
                    j = taylor_jet(self.first_integral, p, 1)
                except ValueError:
                    continue
                if j.coefficient(1, 0).is_zero() and j.coefficient(0, 1).is_zero():
                    continue
            return pt
        raise ValueError("no base point found")

    def rank(self, N=12, D=None, base=None):
        base = self.base_point() if base is None else base
        return jet_rank(self.foliations(), self.first_integrals(base, N), base=base, N=N, D=D)


def _pt(a, b, c):
    return (a, b, c)


# points of P^2 giving the usual pencils
DX = (0, 1, 0)      # [dx]
DY = (1, 0, 0)      # [dy]
DXY = (-1, 1, 0)    # [dx + dy]
ORIGIN = (0, 0, 1)  # [x dy - y dx]


def _slope_point(c):
    """Point at infinity of the pencil [dx + c dy]."""
    return (-c, 1, 0)


def _entry(id_, points, F, field, first_integral=None, relations=None, polar_row=None,
           expected_flat=True, expected_rank="max", note=""):
    web = CDQLWeb(points, F, label=id_, field=field)
    k = len(web)
    rank = pi_bound(2, k) if expected_rank == "max" else expected_rank
    web.expected_rank = rank
    entry = CatalogEntry(id_, web, field, expected_flat, rank, first_integral, [], polar_row, note)
    if relations is not None:
        entry.relations = relations(entry)
    return entry


def _index_of(entry, r):
    """Index of the foliation of the entry for which r is a first integral."""
    W = entry.foliations()
    for i, F in enumerate(W):
        if is_first_integral(r, F):
            return i
    raise ValueError(f"{r} is not a first integral of any member")


def _terms(entry, basis, items):
    """items: (kind, coeff, args, owner) with owner the function whose foliation carries the term."""
    out = []
    for kind, coeff, args, owner in items:
        if kind == "rat":
            e = LogExpression.rational(basis, args, coeff)
        elif kind == "log":
            e = LogExpression.log(basis, args, coeff)
        else:
            e = LogExpression.log2(basis, args, None, coeff)
        out.append((_index_of(entry, owner), e))
    return out


def _rel(entry, basis, kind, items, desc):
    return RelationCandidate(entry.foliations(), _terms(entry, basis, items), kind, desc)


# -- the seven homogeneous sporadic webs ----------------------------------------


def _xy(field):
    x, y = MultiPoly.x(field), MultiPoly.y(field)
    return x, y, RatFunc(x), RatFunc(y)


def _phi_items(basis, t, signs, owner):
    """ln^2 t +- ln^2(t+1) +- ln^2(1/t+1) as log2 items."""
    one = RatFunc.const(basis.field, 1)
    args = (t, t + one, t.inverse() + one)
    return [("log2", s, a, owner) for s, a in zip(signs, args)]


def _rel_A5a(entry):
    f = QQ
    x, y, X, Y = _xy(f)
    basis = LogBasis([x, y, x + y])
    g0, g1, g2, g3, g4 = X * Y * (X + Y), X, Y, X + Y, X / Y
    r1 = _rel(entry, basis, "logarithmic", [
        ("log", 1, g0, g0), ("log", -1, g1, g1), ("log", -1, g2, g2), ("log", -1, g3, g3)],
        "ln g0 = ln g1 + ln g2 + ln g3")
    r2 = _rel(entry, basis, "log-squared", [
        ("log2", 1, g0, g0), ("log2", -3, g1, g1), ("log2", -3, g2, g2), ("log2", -3, g3, g3)]
        + _phi_items(basis, g4, (1, 1, 1), g4),
        "ln^2 g0 = 3 ln^2 g1 + 3 ln^2 g2 + 3 ln^2 g3 - phi(g4)")
    r3 = _rel(entry, basis, "polynomial", [
        ("rat", 3, g0, g0), ("rat", 1, g1 ** 3, g1), ("rat", 1, g2 ** 3, g2), ("rat", -1, g3 ** 3, g3)],
        "3 g0 = -g1^3 - g2^3 + g3^3")
    return [r1, r2, r3]


def _rel_A5b(entry):
    f = QQ
    x, y, X, Y = _xy(f)
    basis = LogBasis([x, y, x + y])
    g0, g1, g2, g3, g4 = X * Y / (X + Y), X, Y, X + Y, X / Y
    r1 = _rel(entry, basis, "logarithmic", [
        ("log", 1, g0, g0), ("log", -1, g1, g1), ("log", -1, g2, g2), ("log", 1, g3, g3)],
        "ln g0 = ln g1 + ln g2 - ln g3")
    r2 = _rel(entry, basis, "log-squared", [
        ("log2", 1, g0, g0), ("log2", -1, g1, g1), ("log2", -1, g2, g2), ("log2", 1, g3, g3)]
        + _phi_items(basis, g4, (1, -1, -1), g4),
        "ln^2 g0 = ln^2 g1 + ln^2 g2 - ln^2 g3 - phi(g4)")
    r3 = _rel(entry, basis, "polynomial", [
        ("rat", 1, g0.inverse(), g0), ("rat", -1, g1.inverse(), g1), ("rat", -1, g2.inverse(), g2)],
        "1/g0 = 1/g1 + 1/g2")
    return [r1, r2, r3]


def _rel_A5c(entry):
    f = QQ
    x, y, X, Y = _xy(f)
    basis = LogBasis([x, y, x + y, x * x + x * y + y * y])
    g0 = RatFunc(x * x + x * y + y * y, x * y * (x + y))
    g1, g2, g3, g4 = X, Y, X + Y, X / Y
    one = RatFunc.const(f, 1)
    r1 = _rel(entry, basis, "logarithmic", [
        ("log", 1, g0, g0), ("log", 1, g3, g3), ("log", -1, g4 + g4.inverse() + one, g4)],
        "ln g0 = -ln g3 + ln(g4 + 1/g4 + 1)")
    r2 = _rel(entry, basis, "polynomial", [
        ("rat", 1, g0, g0), ("rat", -1, g1.inverse(), g1), ("rat", -1, g2.inverse(), g2),
        ("rat", 1, g3.inverse(), g3)],
        "g0 = 1/g1 + 1/g2 - 1/g3")
    r3 = _rel(entry, basis, "polynomial", [
        ("rat", 1, g0 ** 2, g0), ("rat", -1, g1 ** -2, g1), ("rat", -1, g2 ** -2, g2),
        ("rat", -1, g3 ** -2, g3)],
        "g0^2 = 1/g1^2 + 1/g2^2 + 1/g3^2")
    return [r1, r2, r3]


def _rel_A5d(entry):
    """Relations of [dx (dx^3 + dy^3)] x [d(x(x^3 + y^3))], power coefficients solved exactly."""
    f = QQ_XI3
    w = f.gen()
    x, y, X, Y = _xy(f)
    lines = [x, x + y, x + y * w, x + y * (w * w)]
    basis = LogBasis(lines)
    gs = [RatFunc(l) for l in lines]
    g0 = RatFunc(x * (x ** 3 + y ** 3))
    r1 = _rel(entry, basis, "logarithmic", [("log", 1, g0, g0)]
              + [("log", -1, g, g) for g in gs], "ln g0 = ln g1 + ln g2 + ln g3 + ln g4")
    rels = [r1]
    for p, desc in ((1, "g0 = sum a_i g_i^4"), (2, "g0^2 = sum b_i g_i^8")):
        mu = solve_power_relation(g0.num ** p, [l ** (4 * p) for l in lines], f)
        items = [("rat", 1, g0 ** p, g0)]
        items += [("rat", -m, g ** (4 * p), g) for m, g in zip(mu, gs)]
        rels.append(_rel(entry, basis, "polynomial", items, desc))
    return rels


def _rel_A5d_chart(entry):
    """The same relations in the chart dx dy (dx+dy)(dx - w dy), with literal coefficients."""
    f = QQ_XI3
    w = f.gen()
    x, y, X, Y = _xy(f)
    basis = LogBasis([x, y, x + y, x - y * w])
    g1, g2, g3, g4 = X, Y, X + Y, X - Y * w
    g0 = g1 * g2 * g3 * g4
    r1 = _rel(entry, basis, "logarithmic", [
        ("log", 1, g0, g0), ("log", -1, g1, g1), ("log", -1, g2, g2), ("log", -1, g3, g3),
        ("log", -1, g4, g4)],
        "ln g0 = ln g1 + ln g2 + ln g3 + ln g4")
    r2 = _rel(entry, basis, "polynomial", [
        ("rat", 12, g0, g0), ("rat", 2 + w, g1 ** 4, g1), ("rat", -(1 + 2 * w), g2 ** 4, g2),
        ("rat", -(1 - w), g3 ** 4, g3), ("rat", -(1 + 2 * w), g4 ** 4, g4)],
        "12 g0 = (-2-w) g1^4 + (1+2w) g2^4 + (1-w) g3^4 + (1+2w) g4^4")
    r3 = _rel(entry, basis, "polynomial", [
        ("rat", 28, g0 ** 2, g0), ("rat", -(1 + w), g1 ** 8, g1), ("rat", 1, g2 ** 8, g2),
        ("rat", w, g3 ** 8, g3), ("rat", 1, g4 ** 8, g4)],
        "28 g0^2 = (1+w) g1^8 - g2^8 - w g3^8 - g4^8")
    return [r1, r2, r3]


def a5d_chart():
    """A5d written as dx dy (dx+dy)(dx - w dy) x d(xy(x+y)(x - w y)), a linear change of coordinates."""
    f = QQ_XI3
    w = f.gen()
    x, y = MultiPoly.x(f), MultiPoly.y(f)
    integral = RatFunc(x * y * (x + y) * (x - y * w))
    return _entry("A5d_chart", [DX, DY, DXY, (w, f.one(), f.zero())], Foliation.d(integral), f,
                  integral, _rel_A5d_chart)


def _rel_A6b(entry):
    f = QQ_XI3
    w = f.gen()
    x, y, X, Y = _xy(f)
    basis = LogBasis([x + y, x + y * w, x + y * w * w])
    g0 = X ** 3 + Y ** 3
    g1, g2, g3, g4, g5 = X, Y, X + Y, X + Y * w, X + Y * (w * w)
    r1 = _rel(entry, basis, "polynomial", [
        ("rat", 1, g0, g0), ("rat", -1, g1 ** 3, g1), ("rat", -1, g2 ** 3, g2)],
        "g0 = g1^3 + g2^3")
    r2 = _rel(entry, basis, "logarithmic", [
        ("log", 1, g0, g0), ("log", -1, g3, g3), ("log", -1, g4, g4), ("log", -1, g5, g5)],
        "ln g0 = ln g3 + ln g4 + ln g5")
    r3 = _rel(entry, basis, "polynomial", [
        ("rat", 30, g0 ** 2, g0), ("rat", -27, g1 ** 6, g1), ("rat", -27, g2 ** 6, g2),
        ("rat", -1, g3 ** 6, g3), ("rat", -1, g4 ** 6, g4), ("rat", -1, g5 ** 6, g5)],
        "30 g0^2 = 27 g1^6 + 27 g2^6 + g3^6 + g4^6 + g5^6")
    r4 = _rel(entry, basis, "polynomial", [
        ("rat", 84, g0 ** 3, g0), ("rat", -81, g1 ** 9, g1), ("rat", -81, g2 ** 9, g2),
        ("rat", -1, g3 ** 9, g3), ("rat", -1, g4 ** 9, g4), ("rat", -1, g5 ** 9, g5)],
        "84 g0^3 = 81 g1^9 + 81 g2^9 + g3^9 + g4^9 + g5^9")
    return [r1, r2, r3, r4]


def hesse_lines(field=QQ_XI3):
    """The nine lines x + w^a y + w^b, components of the singular Hesse cubics."""
    w = field.gen()
    x, y = MultiPoly.x(field), MultiPoly.y(field)
    return [x + y * w ** a + MultiPoly.const(field, w ** b) for a in range(3) for b in range(3)]


def _rel_H5(entry):
    f = QQ_XI3
    w = f.gen()
    w2 = w * w
    x, y, X, Y = _xy(f)
    basis = LogBasis(hesse_lines(f) + [x, y, x + y, x + y * w, x + y * w2])
    one = RatFunc.const(f, 1)
    g0 = RatFunc(x ** 3 + y ** 3 + 1, x * y)
    g1, g2, g3 = X * w + Y, X + Y, X + Y * w
    g4 = X / Y + Y / X
    r1 = _rel(entry, basis, "logarithmic", [
        ("log", 1, (g0 - 3) / (g0 - w * 3), g0),
        ("log", -1, (g1 + w2) / (g1 + one), g1),
        ("log", -1, (g2 + one) / (g2 + w), g2),
        ("log", -1, (g3 + w2) / (g3 + one), g3)],
        "ln((g0-3)/(g0-3w)) = ln((g1+w^2)/(g1+1)) + ln((g2+1)/(g2+w)) + ln((g3+w^2)/(g3+1))")
    r2 = _rel(entry, basis, "logarithmic", [
        ("log", 1, (g0 - w * 3) / (g0 - w2 * 3), g0),
        ("log", -1, (g1 + one) / (g1 + w), g1),
        ("log", -1, (g2 + w) / (g2 + w2), g2),
        ("log", -1, (g3 + one) / (g3 + w), g3)],
        "ln((g0-3w)/(g0-3w^2)) = ln((g1+1)/(g1+w)) + ln((g2+w)/(g2+w^2)) + ln((g3+1)/(g3+w))")
    r3 = _rel(entry, basis, "logarithmic", [
        ("log", 1, (g0 - 3) * w, g0),
        ("log", -1, g1 + w2, g1),
        ("log", 1, g2 * g2 / (g2 + one), g2),
        ("log", -1, g3 + w2, g3),
        ("log", -1, g4 + 2, g4)],
        "ln(w(g0-3)) = ln(g1+w^2) - ln(g2^2/(1+g2)) + ln(g3+w^2) + ln(g4+2)")
    return [r1, r2, r3]


# -- families ---------------------------------------------------------------------


def _family_points(name, k):
    f = cyclotomic_field(k)
    xi = root_of_unity(k)
    pts = [(xi ** i, f.one(), f.zero()) for i in range(k)]  # dx - xi^i dy
    if name in ("A_III", "A_IV"):
        pts += [DX, DY]
    if name in ("A_II", "A_IV"):
        pts.append(ORIGIN)
    return pts, f


def solve_power_relation(target, forms, field):
    """Coefficients c_i with target = sum c_i forms_i (homogeneous, same degree)."""
    n = target.degree()
    rows = [[p.coefficient(n - m, m) for p in forms] for m in range(n + 1)]
    rhs = [target.coefficient(n - m, m) for m in range(n + 1)]
    return solve_linear(rows, rhs, field)


def _family_relations(name, k):
    def build(entry):
        f = entry.field
        xi = root_of_unity(k)
        x, y = MultiPoly.x(f), MultiPoly.y(f)
        lines = [x - y * xi ** i for i in range(k)]
        xy = RatFunc(x * y)
        rels = []
        if name in ("A_I", "A_II"):
            n = 2 * k - 2
            target = (x * y) ** (k - 1)
            forms = [l ** n for l in lines]
            mu = solve_power_relation(target, forms, f)
            basis = LogBasis([x])
            items = [("rat", 1, xy ** (k - 1), xy)]
            items += [("rat", -m, RatFunc(l) ** n, RatFunc(l)) for m, l in zip(mu, lines)]
            rels.append(_rel(entry, basis, "polynomial", items,
                             "(xy)^(k-1) = sum mu_i (x - xi^i y)^(2k-2)"))
        else:
            n = 2 * k
            target = (x * y) ** k
            forms = [l ** n for l in lines] + [x ** n, y ** n]
            mu = solve_power_relation(target, forms, f)
            basis = LogBasis([x, y])
            owners = [RatFunc(l) for l in lines] + [RatFunc(x), RatFunc(y)]
            items = [("rat", 1, xy ** k, xy)]
            items += [("rat", -m, RatFunc(p), o) for m, p, o in zip(mu, forms, owners)]
            rels.append(_rel(entry, basis, "polynomial", items,
                             "(xy)^k = sum mu_i (x - xi^i y)^(2k) + mu x^(2k) + mu' y^(2k)"))
            rels.append(_rel(entry, basis, "logarithmic", [
                ("log", 1, xy, xy), ("log", -1, RatFunc(x), RatFunc(x)),
                ("log", -1, RatFunc(y), RatFunc(y))], "log(xy) = log x + log y"))
        return rels
    return build


def family(name, k, check=True):
    """Family member; check=False allows k below the threshold (a non-exceptional web)."""
    if name not in FAMILIES:
        raise KeyError(f"unknown family {name!r}")
    if k < 1 or (check and k < FAMILIES[name]):
        raise ValueError(f"{name} needs k >= {FAMILIES[name]}")
    pts, f = _family_points(name, k)
    x, y = MultiPoly.x(f), MultiPoly.y(f)
    F = Foliation.d(RatFunc(x * y))
    return _entry(f"{name}^{k}", pts, F, f, RatFunc(x * y), _family_relations(name, k))


# -- sporadic webs ------------------------------------------------------------


def _sporadic(id_):
    if id_ in ("A5a", "A5b", "A5c"):
        f = QQ
        x, y = MultiPoly.x(f), MultiPoly.y(f)
        pts = [DX, DY, DXY, ORIGIN]
        integral, rel, row = {
            "A5a": (RatFunc(x * y * (x + y)), _rel_A5a, "a1"),
            "A5b": (RatFunc(x * y, x + y), _rel_A5b, "a2"),
            "A5c": (RatFunc(x * x + x * y + y * y, x * y * (x + y)), _rel_A5c, "c2"),
        }[id_]
        return _entry(id_, pts, Foliation.d(integral), f, integral, rel, row)
    if id_ in ("A5d", "A6a"):
        f = QQ_XI3
        w = f.gen()
        x, y = MultiPoly.x(f), MultiPoly.y(f)
        pts = [DX, DXY, _slope_point(w), _slope_point(w * w)]
        if id_ == "A6a":
            pts.append(ORIGIN)
        integral = RatFunc(x * (x ** 3 + y ** 3))
        return _entry(id_, pts, Foliation.d(integral), f, integral, _rel_A5d, "b1")
    if id_ in ("A6b", "A7"):
        f = QQ_XI3
        w = f.gen()
        x, y = MultiPoly.x(f), MultiPoly.y(f)
        pts = [DX, DY, DXY, _slope_point(w), _slope_point(w * w)]
        if id_ == "A7":
            pts.append(ORIGIN)
        integral = RatFunc(x ** 3 + y ** 3)
        return _entry(id_, pts, Foliation.d(integral), f, integral, _rel_A6b, "a4")
    if id_ in ("B5", "B6", "B7", "B8"):
        f = QQ
        x, y = MultiPoly.x(f), MultiPoly.y(f)
        one = MultiPoly.one(f)
        pts = [DX, DY, (0, 1, 1), (1, 0, 1)]
        extra = {"B6": [DXY], "B7": [DXY, ORIGIN], "B8": [DXY, ORIGIN, (1, 1, 1)]}
        pts += extra.get(id_, [])
        integral = RatFunc(x * y, (one - x) * (one - y))
        return _entry(id_, pts, Foliation.d(integral), f, integral)
    if id_ in ("H5", "H10"):
        f = QQ_XI3
        w = f.gen()
        x, y = MultiPoly.x(f), MultiPoly.y(f)
        pts = [DXY, _slope_point(w), _slope_point(w * w)]
        if id_ == "H5":
            pts.append(ORIGIN)
            rel = _rel_H5
        else:
            # pencils through the Hesse base points (0, -w^i) and (-w^i, 0)
            pts += [(f.zero(), -(w ** i), f.one()) for i in range(3)]
            pts += [(-(w ** i), f.zero(), f.one()) for i in range(3)]
            rel = None
        integral = RatFunc(x ** 3 + y ** 3 + 1, x * y)
        return _entry(id_, pts, Foliation.d(integral), f, integral, rel, "c2" if id_ == "H5" else None)
    raise KeyError(f"unknown sporadic id {id_!r}")


def sporadic(id_):
    if id_ in TORI:
        raise NotSupported(f"{id_}: not supported, requires theta functions on complex tori")
    if id_ not in SPORADIC:
        raise KeyError(f"unknown sporadic id {id_!r}")
    return _sporadic(id_)


def flat_nonexceptional(id_):
    if id_ == "deg2_a3h":
        f = QQ
        x, y = MultiPoly.x(f), MultiPoly.y(f)
        integral = RatFunc((4 * y * y + x * y + 4 * x * x) ** 3 * (x + y))
        # sing(F) itself gives a non-flat web; the flat set is q1, q2, q3 and the origin
        pts = [DY, DX, (1, -1, 0), ORIGIN]
        return _entry(id_, pts, Foliation.d(integral), f, integral, polar_row="a3",
                      expected_rank=None)
    if id_ == "deg3_a":
        f = QQ_XI3
        w = f.gen()
        x, y = MultiPoly.x(f), MultiPoly.y(f)
        one = MultiPoly.one(f)
        F = Foliation(x ** 3 + y ** 3 + one + x * y * y * 6, -(x ** 3 + y ** 3 + one + x * x * y * 6))
        h = f.coerce(-1) / 2
        pts = [(h, h, 1), (h * w, h * w, 1), (h * w * w, h * w * w, 1), (1, 1, 0)]
        return _entry(id_, pts, F, f, None, expected_rank=None,
                      note="no rational first integral; jets use a series first integral")
    if id_ == "deg4_a":
        f = QQ
        x, y = MultiPoly.x(f), MultiPoly.y(f)
        integral = RatFunc(x * y * (x + y) * (x * x + x * y + y * y) ** 3)
        pts = [(1, -1, 0), DY, DX, ORIGIN]
        return _entry(id_, pts, Foliation.d(integral), f, integral, polar_row="c1",
                      expected_rank=None)
    raise KeyError(f"unknown flat non-exceptional id {id_!r}")


def get(id_, max_k=6):
    """Look up any catalog id, including family ids such as 'A_I^4' (k <= max_k)."""
    if id_ in SPORADIC or id_ in TORI:
        return sporadic(id_)
    if id_ in FLAT_NONEXCEPTIONAL:
        return flat_nonexceptional(id_)
    if "^" in id_:
        name, k = id_.split("^", 1)
        if not k.isdigit():
            raise KeyError(f"bad family parameter in {id_!r}")
        if int(k) > max_k:
            raise ValueError(f"{id_}: k > {max_k}; raise max_k to allow it")
        return family(name, int(k))
    raise KeyError(f"unknown catalog id {id_!r}")


def all_ids(max_k=6):
    ids = list(SPORADIC) + list(FLAT_NONEXCEPTIONAL)
    for name, lo in FAMILIES.items():
        ids += [f"{name}^{k}" for k in range(lo, max_k + 1)]
    return ids


# -- Table 1 -----------------------------------------------------------------------

Q1, Q2, Q3 = (1, 0), (0, 1), (1, -1)


def _bf(field, p):
    return BinaryForm.from_poly(p, p.degree())


@dataclass
class Table1Row:
    label: str
    polar: PolarMap
    points: list
    e: tuple

    @property
    def degree(self):
        return self.polar.degree

    def hats(self):
        out = []
        for i, q in enumerate(self.points):
            others = self.points[:i] + self.points[i + 1:]
            out.append(barycenter_point(q, others, self.polar.field))
        return out

    def expected_fibers(self):
        """e_i q_i + (d - e_i) q^_i for every point, as {point: multiplicity}."""
        d = self.degree
        f = self.polar.field
        res = []
        for q, h, e in zip(self.points, self.hats(), self.e):
            fiber = {}
            qn = _norm1(q, f)
            hn = _norm1(h, f)
            if e:
                fiber[qn] = fiber.get(qn, 0) + e
            if d - e:
                fiber[hn] = fiber.get(hn, 0) + d - e
            res.append((qn, fiber))
        return res


def _norm1(p, f):
    return normalize_point(p, f)


def table1_row(label):
    f = QQ
    x, y = MultiPoly.x(f), MultiPoly.y(f)
    qs = [Q1, Q2, Q3]
    if label == "a1":
        P, Q, e = x * (2 * y + x), -(y * (2 * x + y)), (1, 1, 1)
    elif label == "a2":
        P, Q, e = x * x, -(y * y), (2, 2, 1)
    elif label == "a3":
        P, Q, e = (x + 2 * y) ** 2, -((2 * x + y) ** 2), (0, 0, 1)
    elif label == "c1":
        P, Q, e = x * (2 * y + x) ** 3, -(y * (2 * x + y) ** 3), (1, 1, 1)
    elif label == "c2":
        P, Q, e = x ** 3 * (2 * y + x), -(y ** 3 * (2 * x + y)), (3, 3, 3)
    elif label == "a4":
        f = QQ_XI3
        w = f.gen()
        x, y = MultiPoly.x(f), MultiPoly.y(f)
        P, Q, e = y * y, -(x * x), (0, 0, 1, 1, 1)
        qs = qs + [(-w, 1), (-w * w, 1)]
    elif label == "b1":
        f = QQ_XI3
        w = f.gen()
        x, y = MultiPoly.x(f), MultiPoly.y(f)
        c = 1 - w * w
        P = 3 * x * (x + y * c) ** 2
        Q = -(y * (3 * x + y * c) ** 2)
        e = (1, 1, 1, 1)
        pm = PolarMap(_bf(f, P), _bf(f, Q))
        fixed, _res = pm.fixed_points()
        known = [_norm1(q, f) for q in qs]
        extra = [p for p, _m in fixed if _norm1(p, f) not in known]
        return Table1Row(label, pm, [tuple(f.coerce(v) for v in q) for q in qs] + extra, e)
    else:
        raise KeyError(f"unknown Table 1 label {label!r}")
    pm = PolarMap(_bf(f, P), _bf(f, Q))
    return Table1Row(label, pm, [tuple(f.coerce(v) for v in q) for q in qs], e)


# field over which the fixed points of each row split
_ROW_FIELD = {"a3": lambda: quadratic_field(-7), "a4": lambda: QQ_XI3, "b1": lambda: QQ_XI3}


def _polar_over(f, field):
    def conv(form):
        return BinaryForm(field, [field.coerce(c) for c in form.coeffs])
    return PolarMap(conv(f.P), conv(f.Q), f.chart)


def _apply(M, p, field):
    (a, b), (c, d) = M
    u, v = (field.coerce(t) for t in p)
    return normalize_point((a * u + b * v, c * u + d * v), field)


def polar_row_check(F, label):
    """Match the polar map of F at infinity with a Table 1 row and compare fibers.

    Returns {"match", "matrix", "fibers_ok"}; matrix M satisfies M o f o M^-1 = row map.
    """
    row = table1_row(label)
    f = ell_polar_map(F)
    field = _ROW_FIELD.get(label, lambda: f.field)()
    if f.field != QQ and f.field != field:
        field = f.field
    f = _polar_over(f, field)
    g = _polar_over(row.polar, field)
    M = match_normal_form(f, g)
    if M is None:
        return {"match": False, "matrix": None, "fibers_ok": False}
    (a, b), (c, d) = M
    inv = ((d, -b), (-c, a))
    ok = True
    for q, fiber in row.expected_fibers():
        got, _res = polar_fiber(f, _apply(inv, q, field))
        got = {normalize_point(p, field): m for p, m in got}
        want = {}
        for p, m in fiber.items():
            key = _apply(inv, p, field)
            want[key] = want.get(key, 0) + m
        ok = ok and got == want
    return {"match": True, "matrix": M, "fibers_ok": ok}


__all__ = ["CatalogEntry", "NotSupported", "SPORADIC", "FLAT_NONEXCEPTIONAL", "FAMILIES", "TORI",
           "TABLE1", "a5d_chart", "family", "sporadic", "flat_nonexceptional", "get", "all_ids", "hesse_lines",
           "solve_power_relation", "table1_row", "Table1Row", "polar_row_check"]
