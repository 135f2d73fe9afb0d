import pytest
from hypothesis import given, settings, strategies as st

from webcurv import catalog
from webcurv.abelrel import (LogBasis, LogExpression, RelationCandidate, d_log_expression,
                             jet_rank, pencil_first_integral, pi_bound, series_first_integral,
                             solve_mu, verify_relation)
from webcurv.algebra import QQ, MultiPoly, RatFunc, cyclotomic_field, root_of_unity, taylor_jet
from webcurv.geometry import Foliation, ProjectiveMap, Web, is_first_integral, pullback

x, y = MultiPoly.x(), MultiPoly.y()
X, Y = RatFunc(x), RatFunc(y)
one = RatFunc.const(QQ, 1)


def test_pi_bound_values():
    assert pi_bound(2, 3) == 1
    assert pi_bound(2, 5) == 6
    assert pi_bound(2, 10) == 36
    assert pi_bound(3, 6) == 4
    assert all(pi_bound(2, k) == (k - 1) * (k - 2) // 2 for k in range(1, 12))
    with pytest.raises(ValueError):
        pi_bound(1, 4)


def test_log_basis_rejects_bad_generators():
    with pytest.raises(ValueError):
        LogBasis([x, x * y])
    with pytest.raises(ValueError):
        LogBasis([x * x])
    with pytest.raises(ValueError):
        LogBasis([MultiPoly.one()])
    with pytest.raises(ValueError):
        LogBasis([x]).decompose(RatFunc(x + 1))


def test_d_log():
    B = LogBasis([x, y, x + y])
    d1 = d_log_expression(LogExpression.log(B, X))
    assert d1.part(()) == (X.inverse(), RatFunc.const(QQ, 0))
    # d(L^2) = 2 L dx/x
    d2 = d_log_expression(LogExpression.log2(B, X))
    assert d2.part((0,)) == (X.inverse() * 2, RatFunc.const(QQ, 0))
    assert d2.part(()) == (RatFunc.const(QQ, 0), RatFunc.const(QQ, 0))
    e = LogExpression.log(B, X * Y * (X + Y)) - LogExpression.log(B, X) \
        - LogExpression.log(B, Y) - LogExpression.log(B, X + Y)
    assert d_log_expression(e).is_zero()


def test_catalog_relations_verify():
    for id_ in ("A5a", "A5b", "A5c", "A5d", "A6b", "H5"):
        for r in catalog.get(id_).relations:
            v = verify_relation(r)
            assert v.passed, (id_, r.description, v)


def test_polynomial_relation_is_exact():
    r = catalog.get("A5a").relations[2]
    v = verify_relation(r)
    assert v.passed and v.constant_residual == 0.0
    assert "exact polynomial identity" in v.notes


def test_printed_A5b_square_coefficient_fails():
    e = catalog.get("A5b")
    B = LogBasis([x, y, x + y])
    g0, g3, g4 = X * Y / (X + Y), X + Y, X / Y
    items = [("log2", 1, g0, g0), ("log2", -1, X, X), ("log2", -1, Y, Y), ("log2", 3, g3, g3)]
    items += catalog._phi_items(B, g4, (1, -1, -1), g4)
    r = catalog._rel(e, B, "log-squared", items, "as printed")
    v = verify_relation(r)
    assert not v.symbolic_d_zero and not v.passed


def test_A5d_chart_literal_coefficients():
    e = catalog.a5d_chart()
    assert all(verify_relation(r).passed for r in e.relations)


def test_wrong_constant_is_caught():
    e = catalog.get("A5a")
    B = LogBasis([x, y, x + y])
    g0 = X * Y * (X + Y)
    r = catalog._rel(e, B, "logarithmic", [
        ("log", 1, g0, g0), ("log", -1, X, X), ("log", -1, Y, Y), ("log", -1, (X + Y) * 2, X + Y)], "off by ln 2")
    v = verify_relation(r)
    assert v.symbolic_d_zero and not v.constant_checked


def test_relation_terms_must_live_on_their_foliation():
    e = catalog.get("A5a")
    B = LogBasis([x, y, x + y])
    W = e.foliations()
    # ln x attached to the y-pencil
    iy = next(i for i, F in enumerate(W) if is_first_integral(Y, F))
    r = RelationCandidate(W, [(iy, LogExpression.log(B, X))], "logarithmic")
    assert not verify_relation(r).terms_invariant


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_solve_mu(k):
    mu = solve_mu(k)
    f = cyclotomic_field(k)
    xi = root_of_unity(k)
    Xf, Yf = MultiPoly.x(f), MultiPoly.y(f)
    total = MultiPoly.zero(f)
    for i, m in enumerate(mu, start=1):
        total = total + (Xf - Yf * xi ** i) ** (2 * k - 2) * m
    assert total == (Xf * Yf) ** (k - 1)


def test_series_first_integral_matches_known_integral():
    F = Foliation(y, x)
    u = series_first_integral(F, (1, 1), 6)
    assert u == taylor_jet(RatFunc(x * y - 1), (1, 1), 6)
    with pytest.raises(ValueError):
        series_first_integral(Foliation(x, y), (0, 0), 4)


def test_pencil_first_integral_forms():
    assert pencil_first_integral((1, 0, 0), (0, 0)) == RatFunc(-y)
    r = pencil_first_integral((0, 0, 1), (1, 2))
    assert r == Y / X


def test_parallel_three_web_rank():
    W = Web([Foliation.pencil(p) for p in [(1, 0, 0), (0, 1, 0), (1, -1, 0)]])
    us = [RatFunc(-y), RatFunc(x), RatFunc(x + y)]
    r = jet_rank(W, us, N=6)
    assert r.kernel_dimension == 1 and r.stabilized and r.pi == 1


def test_bol_rank():
    e = catalog.get("B5")
    r = e.rank(N=10)
    assert r.kernel_dimension == 6 == pi_bound(2, 5)
    assert r.stabilized


def test_A_I_4_rank():
    r = catalog.get("A_I^4").rank(N=10)
    assert r.kernel_dimension == 4 * 3 // 2


def test_rank_rejects_discriminant_base():
    W = Web([Foliation.pencil(p) for p in [(1, 0, 0), (0, 1, 0)]] + [Foliation(y, x)])
    with pytest.raises(ValueError):
        jet_rank(W, [RatFunc(-y), RatFunc(x), RatFunc(x * y)], base=(0, 1), N=4)


def test_rank_is_permutation_invariant():
    e = catalog.get("A5a")
    W = e.foliations()
    us = e.first_integrals(e.base_point(), 8)
    base = e.base_point()
    r1 = jet_rank(W, us, base=base, N=8).kernel_dimension
    r2 = jet_rank(Web(list(W)[::-1]), us[::-1], base=base, N=8).kernel_dimension
    assert r1 == r2 == 6


@settings(max_examples=8, deadline=None)
@given(st.integers(-3, 3), st.integers(1, 3))
def test_rank_invariant_under_affine_pullback(s, t):
    # A5a moved by (x, y) -> (t x + s y, y)
    phi = ProjectiveMap.affine(((t, s), (0, 1)))
    e = catalog.get("A5a")
    W = e.foliations()
    base = e.base_point()
    us = e.first_integrals(base, 8)
    W2 = pullback(phi, W)
    inv = ProjectiveMap.affine(((QQ.one() / t, QQ.coerce(-s) / t), (0, 1)))
    b2 = inv(base)
    us2 = [pullback(phi, u) for u in us]
    r = jet_rank(W2, us2, base=b2, N=8)
    assert r.kernel_dimension == 6


@settings(max_examples=8, deadline=None)
@given(st.integers(-3, 3), st.integers(1, 3))
def test_relation_survives_linear_pullback(s, t):
    phi = ProjectiveMap.affine(((t, s), (0, 1)))
    Xp, Yp = phi.components()
    gens = [pullback(phi, g) for g in (x, y, x + y)]
    B = LogBasis(gens)
    W = pullback(phi, catalog.get("A5a").foliations())

    def idx(r):
        return next(i for i, F in enumerate(W) if is_first_integral(r, F))

    g0 = Xp * Yp * (Xp + Yp)
    terms = [(idx(g0), LogExpression.log(B, g0))]
    terms += [(idx(g), LogExpression.log(B, g, -1)) for g in (Xp, Yp, Xp + Yp)]
    v = verify_relation(RelationCandidate(W, terms, "logarithmic"))
    assert v.passed
