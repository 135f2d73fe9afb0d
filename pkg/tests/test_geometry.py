import pytest
from hypothesis import given, settings, strategies as st

from webcurv.algebra import QQ, QQ_XI3, MultiPoly, RatFunc
from webcurv.geometry import (CDQLWeb, Divisor, Foliation, OneForm, ProjectiveMap, TwoForm,
                              VectorField, Web, contract, darboux_degree, discriminant,
                              exterior_d, foliation_degree, is_first_integral, is_invariant,
                              linear_part, pencil_foliation, pullback, singular_points, tangency,
                              wedge)

x, y = MultiPoly.x(), MultiPoly.y()
one = MultiPoly.one()
DX = Foliation(one, MultiPoly.zero())
DY = Foliation(MultiPoly.zero(), one)


def same_up_to_unit(p, q):
    return p.normalized() == q.normalized()


def test_exterior_d_examples():
    assert exterior_d(OneForm(0, x)) == TwoForm(RatFunc(one))
    assert exterior_d(OneForm.d(RatFunc(x * y))).is_zero()
    assert exterior_d(OneForm(y, -(x - y))) == TwoForm(RatFunc(MultiPoly.const(QQ, -2)))


def test_wedge_examples():
    dx, dy = OneForm(1, 0), OneForm(0, 1)
    assert wedge(dx, dy).c == RatFunc(one)
    w = OneForm(x, y * y)
    assert wedge(w, w).is_zero()
    assert wedge(OneForm(1, 3), OneForm(1, 7)).c == RatFunc(MultiPoly.const(QQ, 4))


def test_contract_radial():
    R = VectorField.radial()
    assert contract(R, OneForm(1, 0)) == RatFunc(x)
    assert contract(R, OneForm(-y, x)).is_zero()
    assert contract(R, OneForm(y, x)) == RatFunc(2 * x * y)


def test_pullback_examples():
    swap = ProjectiveMap(((0, 1, 0), (1, 0, 0), (0, 0, 1)))
    assert pullback(swap, OneForm(1, 0)) == OneForm(0, 1)
    ident = ProjectiveMap.identity()
    F = Foliation(y * (y - 1), x * (x - 1))
    assert pullback(ident, F) == F
    dbl = ProjectiveMap.affine(((2, 0), (0, 1)))
    assert pullback(dbl, TwoForm(RatFunc(one))) == TwoForm(RatFunc(MultiPoly.const(QQ, 2)))
    with pytest.raises(ValueError):
        ProjectiveMap(((1, 2, 0), (2, 4, 0), (0, 0, 1)))


def test_tangency_with_cube_root():
    w = QQ_XI3.gen()
    X, Y = MultiPoly.x(QQ_XI3), MultiPoly.y(QQ_XI3)
    F0 = Foliation.d(RatFunc(X * Y * (X - Y) * (X * w + Y)))
    t = tangency(F0, DX.over(QQ_XI3))
    assert same_up_to_unit(t, X * (X + Y * (w * w - 1)) ** 2)


def test_tangency_simple():
    assert tangency(DX, DY).is_constant()
    assert same_up_to_unit(tangency(Foliation.d(RatFunc(x ** 3 + y ** 3)), DY), x * x)
    with pytest.raises(ValueError):
        tangency(DX, DX)


def test_discriminant_examples():
    assert discriminant(Web([DX, DY, Foliation(one, -one)])).is_constant()
    assert same_up_to_unit(discriminant(Web([DX, Foliation.d(RatFunc(x * y))])), x)
    pts = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
    W = Web([Foliation.pencil(p) for p in pts])
    assert same_up_to_unit(discriminant(W), x * y * (x - 1) * (y - 1) * (x - y) * (x + y - 1))


def test_invariance():
    assert is_invariant(x, Foliation.d(RatFunc(x * y)))
    assert is_invariant(y, Foliation(y, one))
    assert not is_invariant(x + y, DX)
    with pytest.raises(ValueError):
        is_invariant(MultiPoly.const(QQ, 3), DX)


def test_first_integrals():
    F = Foliation(y * (2 * x + y) ** 3, x * (2 * y + x) ** 3)
    assert is_first_integral(RatFunc(x * y * (x + y) * (x * x + x * y + y * y) ** 3), F)
    assert is_first_integral(RatFunc(x * y), Foliation(y, x))
    assert not is_first_integral(RatFunc(x), Foliation.d(RatFunc(x * y)))


def test_foliation_degree():
    assert foliation_degree(Foliation(y * (y - 1), x * (x - 1))) == 2
    assert foliation_degree(DX) == 0
    assert foliation_degree(Foliation(x * x, y * y)) == 2
    assert foliation_degree(Foliation(-y, x)) == 0


def test_pencil_foliation():
    assert pencil_foliation(x, y) == Foliation(y, -x)
    B = pencil_foliation(x * x - 1, y * y - 1)
    assert B == Foliation.d(RatFunc(y * y - 1, x * x - 1))
    H = pencil_foliation(x * y, x ** 3 + y ** 3 + 1)
    assert is_first_integral(RatFunc(x ** 3 + y ** 3 + 1, x * y), H)
    with pytest.raises(ValueError):
        pencil_foliation(x * y, x * (x + 1))


def test_darboux_degree_hesse():
    # no multiple fibers: 2e - 2
    assert darboux_degree(3) == 4
    assert darboux_degree(4, [(x * y, 2)]) == 4


def test_singular_points():
    s = singular_points(Foliation(x * x, y * y))
    assert s.points == [(QQ.zero(), QQ.zero())] and s.complete
    G = singular_points(Foliation(y * (y - 1), x * (x - 1)))
    assert {(int(a.to_rational()), int(b.to_rational())) for a, b in G.points} == {(0, 0), (1, 1), (0, 1), (1, 0)}
    assert singular_points(DX).points == []


def test_linear_part_ratios():
    assert linear_part(Foliation(-y, x), (0, 0)).ratios == [QQ.one()]
    assert linear_part(Foliation(x, y), (0, 0)).ratios == [QQ.coerce(-1)]
    with pytest.raises(ValueError):
        linear_part(DX, (0, 0))


def test_riccati_saddle_and_node():
    # k=2 barycenter foliation for p0=[0:1:0], p1=(0,0), p2=(1,0)
    F = Foliation(-y * (2 * x - 1), 2 * x * (x - 1))
    assert QQ.coerce(1) / 2 in linear_part(F, (0, 0)).ratios
    # blow up p0 in the chart y = 1/v; the saddle sits on v = 0
    v = MultiPoly.y()
    a = RatFunc(F.a).compose(RatFunc(x), RatFunc(one, v))
    b = RatFunc(F.b).compose(RatFunc(x), RatFunc(one, v))
    G = Foliation.from_form(OneForm(a, -b / RatFunc(v * v)))
    assert QQ.coerce(-1) / 2 in linear_part(G, (0, 0)).ratios


def test_web_and_cdql_validation():
    with pytest.raises(ValueError):
        Web([DX, DX])
    with pytest.raises(ValueError):
        CDQLWeb([(0, 0, 1), (0, 0, 2)], Foliation(x * x, y * y))
    with pytest.raises(ValueError):
        CDQLWeb([(0, 0, 1)], DX)
    with pytest.raises(ValueError):
        Divisor([(x, 1), (x * y, 1)])
    W = CDQLWeb([(0, 0, 1), (1, 0, 0)], Foliation(x * x, y * y))
    assert len(W) == 3 and len(W.web()) == 3


ints = st.integers(-4, 4)
polys = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), ints), min_size=1, max_size=5)


def mk(terms):
    p = MultiPoly.zero()
    for i, j, c in terms:
        p = p + c * x ** i * y ** j
    return p


@settings(max_examples=40, deadline=None)
@given(polys, polys)
def test_d_of_exact_form_vanishes(n, d):
    num, den = mk(n), mk(d)
    if num.is_zero() or den.is_zero() or RatFunc(num, den).is_constant():
        return
    assert exterior_d(OneForm.d(RatFunc(num, den))).is_zero()


@settings(max_examples=40, deadline=None)
@given(polys, polys, polys, polys)
def test_wedge_antisymmetric(a, b, c, d):
    p, q, r, s = mk(a), mk(b), mk(c), mk(d)
    if (p.is_zero() and q.is_zero()) or (r.is_zero() and s.is_zero()):
        return
    w1, w2 = OneForm(p, q), OneForm(r, s)
    assert wedge(w1, w2) == -wedge(w2, w1)


maps = st.tuples(ints, ints, ints, ints, ints, ints).filter(lambda m: m[0] * m[3] - m[1] * m[2] != 0)


@settings(max_examples=30, deadline=None)
@given(polys, polys, maps)
def test_tangency_symmetric_and_natural(a, b, m):
    pa, pb = mk(a), mk(b)
    if pa.is_constant() or pb.is_constant():
        return
    F, G = Foliation.d(RatFunc(pa)), Foliation.d(RatFunc(pb))
    if F == G:
        return
    assert tangency(F, G) == tangency(G, F)
    phi = ProjectiveMap.affine(((m[0], m[1]), (m[2], m[3])), (m[4], m[5]))
    lhs = tangency(pullback(phi, F), pullback(phi, G))
    assert same_up_to_unit(lhs, pullback(phi, tangency(F, G)))
    assert foliation_degree(pullback(phi, F)) == foliation_degree(F)


@settings(max_examples=20, deadline=None)
@given(st.integers(-3, 3), st.integers(-3, 3))
def test_fibres_of_first_integral_are_invariant(c0, c1):
    # xy(x+y)(x^2+xy+y^2)^3: its linear factors are leaves
    F = Foliation(y * (2 * x + y) ** 3, x * (2 * y + x) ** 3)
    for h in (x, y, x + y):
        assert is_invariant(h, F)
    line = x * c0 + y * c1
    if not line.is_zero() and not any(same_up_to_unit(line, h) for h in (x, y, x + y)):
        assert not is_invariant(line, F)
