"""Acceptance criteria, one marker per criterion; conftest prints the PASS/FAIL summary."""

import random
import time

import pytest

from webcurv import catalog
from webcurv.abelrel import pi_bound, verify_relation
from webcurv.algebra import QQ, MultiPoly, RatFunc, normalize_point
from webcurv.geometry import Foliation, TwoForm, Web, is_first_integral
from webcurv.webops import (Configuration, barycenter_config, barycenter_foliation, barycenter_point,
                            barycenter_web, beta_star_probe, curvature, ell_polar_map, polar_fiber)

x, y = MultiPoly.x(), MultiPoly.y()
one, zero = MultiPoly.one(), MultiPoly.zero()


def lin(a, b):
    return Foliation(MultiPoly.const(QQ, a), MultiPoly.const(QQ, b))


DX, DY = lin(1, 0), lin(0, 1)

# -- 1 ---------------------------------------------------------------------------


@pytest.mark.criterion(1, "golden curvature dx^dy/(y(x+1)^2)")
def test_c1_golden_curvature():
    t = time.perf_counter()
    K = curvature([Foliation(y, one), DY, Foliation(y, -x)]).K
    assert time.perf_counter() - t < 1.0
    assert K == TwoForm(RatFunc(one, y * (x + 1) ** 2))
    assert K.c.num == one and K.c.den == y * (x + 1) ** 2


# -- 2 ---------------------------------------------------------------------------

FLAT_IDS = ["B5", "B6", "B7", "B8", "H5", "H10", "A5a", "A5b", "A5c", "A5d", "A6a", "A6b", "A7"]
FLAT_IDS += [f"{n}^{k}" for n, k0 in catalog.FAMILIES.items() for k in range(k0, 7)]


@pytest.mark.criterion(2, "classified webs are flat")
@pytest.mark.parametrize("id_", FLAT_IDS)
def test_c2_flatness(id_):
    e = catalog.get(id_)
    t = time.perf_counter()
    rep = curvature(e.foliations())
    dt = time.perf_counter() - t
    assert rep.is_flat and rep.K.c.is_zero()
    assert dt < (600 if id_ == "H10" else 60)


# -- 3 ---------------------------------------------------------------------------


@pytest.mark.criterion(3, "flat but not exceptional: K = 0 and rank < 6")
@pytest.mark.parametrize("id_", catalog.FLAT_NONEXCEPTIONAL)
def test_c3_flat_not_exceptional(id_):
    e = catalog.get(id_)
    assert e.k == 5
    assert curvature(e.foliations()).is_flat
    r = e.rank(N=12)
    assert r.kernel_dimension < pi_bound(2, 5) == 6


# -- 4 ---------------------------------------------------------------------------


@pytest.mark.criterion(4, "rank reproduction (the +2 additivity clause is unattainable, see notes)")
@pytest.mark.parametrize("id_,rank", [("B5", 6), ("A_I^4", 6), ("A_III^2", 6), ("A6b", 10)])
def test_c4_ranks(id_, rank):
    r = catalog.get(id_).rank(N=14)
    assert r.kernel_dimension == rank
    assert r.stabilized
    if id_ == "A6b":
        assert rank == pi_bound(2, 6)


def _ranks_I_II():
    a1 = catalog.family("A_I", 3, check=False).rank(N=14)
    a2 = catalog.family("A_II", 3).rank(N=14)
    assert a1.stabilized and a2.stabilized
    return a1.kernel_dimension, a2.kernel_dimension


@pytest.mark.criterion(4)
@pytest.mark.xfail(strict=True, reason="A_I^3 is a 4-web: rank(A_I^3)+2 would need rank 4 > pi(2,4) = 3")
def test_c4_additivity_plus_two():
    r1, r2 = _ranks_I_II()
    assert r2 == r1 + 2


def test_additivity_matches_web_size():
    # adding the radial foliation to a k-web raises the rank by k - 1; A_I^3 has four members
    e1 = catalog.family("A_I", 3, check=False)
    r1, r2 = _ranks_I_II()
    assert r1 == pi_bound(2, 4) == 3
    assert r2 == r1 + (e1.k - 1) == 6


# -- 5 ---------------------------------------------------------------------------

REL_IDS = [i for i in catalog.all_ids() if catalog.get(i).relations]


@pytest.mark.criterion(5, "explicit abelian relations")
@pytest.mark.parametrize("id_", REL_IDS + ["A5d_chart"])
def test_c5_relations(id_):
    e = catalog.a5d_chart() if id_ == "A5d_chart" else catalog.get(id_)
    for r in e.relations:
        v = verify_relation(r)
        assert v.symbolic_d_zero and v.terms_invariant, r.description
        if r.declared_kind == "polynomial":
            assert v.constant_checked and v.constant_residual == 0.0, r.description
        else:
            assert v.constant_checked and v.constant_residual < 1e-30, r.description


@pytest.mark.criterion(5)
def test_c5_named_polynomial_relations_present():
    descs = {r.description for i in ("A5a", "A6b", "H5") for r in catalog.get(i).relations}
    assert "3 g0 = -g1^3 - g2^3 + g3^3" in descs
    assert any(d.startswith("84 g0^3") for d in descs)
    assert len(catalog.get("H5").relations) == 3


# -- 6 ---------------------------------------------------------------------------


def _proj_eq(p, q):
    return (p[0] * q[1] - p[1] * q[0]).is_zero()


def _act(g, p):
    return (p[0] * g[0][0] + p[1] * g[0][1], p[0] * g[1][0] + p[1] * g[1][1])


@pytest.mark.criterion(6, "barycenter suite")
def test_c6_pairs_identity():
    rng = random.Random(6)
    for _ in range(20):
        a, b = rng.sample(range(-30, 31), 2)
        c = Configuration.from_points([(a, 1), (b, 1)])
        assert barycenter_config(c) == c


@pytest.mark.criterion(6)
def test_c6_triples_involution():
    rng = random.Random(60)
    for _ in range(100):
        c = Configuration.from_points([(v, 1) for v in rng.sample(range(-30, 31), 3)])
        assert barycenter_config(barycenter_config(c)) == c


@pytest.mark.criterion(6)
def test_c6_multiplicity_bound():
    rng = random.Random(600)
    for _ in range(1000):
        k = rng.randint(3, 6)
        c = Configuration.from_points([(v, 1) for v in rng.sample(range(-20, 21), k)])
        ms = barycenter_config(c).multiplicities()
        if ms is not None:
            assert max(ms) <= k - 2


@pytest.mark.criterion(6)
def test_c6_example_values():
    assert barycenter_foliation(DX, Web([DY, lin(1, -1), lin(1, 1)])) == DY
    assert barycenter_foliation(lin(1, 1), Web([DX, DY, lin(1, -1)])) == lin(1, -1)
    assert barycenter_foliation(lin(1, -1), Web([DX, DY, lin(1, 1)])) == lin(1, 1)


@pytest.mark.criterion(6)
def test_c6_equivariance():
    rng = random.Random(6000)
    done = 0
    while done < 50:
        g = [[rng.randint(-5, 5) for _ in range(2)] for _ in range(2)]
        if g[0][0] * g[1][1] - g[0][1] * g[1][0] == 0:
            continue
        k = rng.randint(2, 5)
        pts = [(QQ.coerce(a), QQ.coerce(b)) for a, b in
               {(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(k)}]
        v = (QQ.coerce(rng.randint(-6, 6)), QQ.coerce(rng.randint(0, 3)))
        if v == (QQ.zero(), QQ.zero()):
            continue
        try:
            b = barycenter_point(v, pts)
        except ValueError:
            continue
        gb = barycenter_point(_act(g, v), [_act(g, p) for p in pts])
        assert _proj_eq(gb, _act(g, b))
        done += 1


# -- 7 ---------------------------------------------------------------------------


def _random_web(rng, k):
    while True:
        fs = []
        for _ in range(k):
            c = [rng.randint(-3, 3) for _ in range(6)]
            a = c[0] + c[1] * x + c[2] * y
            b = c[3] + c[4] * x + c[5] * y
            if not (a.is_zero() and b.is_zero()):
                fs.append(Foliation(a, b))
        if len(set(fs)) == k:
            return Web(fs)


def _nakai(k, seed, count):
    rng = random.Random(seed)
    done = 0
    while done < count:
        W = _random_web(rng, k)
        try:
            B = barycenter_web(W)
        except ValueError:
            continue
        if len(set(B)) < k:
            continue
        assert curvature(B).K == curvature(W).K
        done += 1


@pytest.mark.criterion(7, "Nakai identity K(W) = K(beta(W))")
def test_c7_nakai_three_webs():
    _nakai(3, 7, 25)


@pytest.mark.criterion(7)
def test_c7_nakai_four_webs():
    _nakai(4, 77, 25)


# -- 8 ---------------------------------------------------------------------------

POLAR_CASES = [
    ("a4", Foliation.d(RatFunc(x ** 3 + y ** 3))),
    ("c1", Foliation(y * (2 * x + y) ** 3, x * (2 * y + x) ** 3)),
    ("a2", Foliation(y * (y - 1), x * (x - 1))),
]


@pytest.mark.criterion(8, "polar maps match Table 1")
@pytest.mark.parametrize("label,F", POLAR_CASES, ids=[c[0] for c in POLAR_CASES])
def test_c8_polar_rows(label, F):
    chk = catalog.polar_row_check(F, label)
    assert chk["match"] and chk["fibers_ok"]
    row = catalog.table1_row(label)
    f = ell_polar_map(F)
    # the three foliations already sit in the normalized chart
    assert f.P.to_poly().over(row.polar.field) == row.polar.P.to_poly()
    assert f.Q.to_poly().over(row.polar.field) == row.polar.Q.to_poly()
    K = row.polar.field
    for q, expected in row.expected_fibers():
        pts, res = polar_fiber(row.polar, q)
        assert res.degree == 0
        got = {normalize_point(p, K): m for p, m in pts}
        assert got == {normalize_point(p, K): m for p, m in expected.items()}


@pytest.mark.criterion(8)
def test_c8_c1_fiber_pattern():
    f = ell_polar_map(POLAR_CASES[1][1])
    pts, _ = polar_fiber(f, (1, 0))
    got = {normalize_point(p, QQ): m for p, m in pts}
    assert got == {(QQ.one(), QQ.zero()): 1, (QQ.coerce(-1) / 2, QQ.one()): 3}


# -- 9 ---------------------------------------------------------------------------


@pytest.mark.criterion(9, "beta_* semiconjugacy and post-critical finiteness")
def test_c9_beta_star():
    r = beta_star_probe(seed=9, samples=24)
    assert len(r["semiconjugacy"]) >= 20
    assert r["semiconjugacy_ok"]
    assert r["map_degree"] == 5
    assert r["post_critically_finite"]
    assert all(o["finite"] and len(o["orbit"]) < 50 for o in r["critical_orbits"])


# -- 10 --------------------------------------------------------------------------


@pytest.mark.criterion(10, "first integrals of every catalog pairing")
@pytest.mark.parametrize("id_", catalog.all_ids() + ["A5d_chart"])
def test_c10_first_integrals(id_):
    e = catalog.a5d_chart() if id_ == "A5d_chart" else catalog.get(id_)
    if e.first_integral is not None:
        assert is_first_integral(e.first_integral, e.web.nonlinear)
    base = e.base_point()
    for F, u in zip(e.foliations(), e.first_integrals(base, 4)):
        if isinstance(u, RatFunc):
            assert is_first_integral(u, F)


@pytest.mark.criterion(10)
def test_c10_named_integrals():
    from webcurv.algebra import QQ_XI3
    X, Y = MultiPoly.x(QQ_XI3), MultiPoly.y(QQ_XI3)
    pairs = [
        ("deg2_a3h", RatFunc((4 * y * y + x * y + 4 * x * x) ** 3 * (x + y))),
        ("A5d", RatFunc(X * (X ** 3 + Y ** 3))),
        ("deg4_a", RatFunc(x * y * (x + y) * (x * x + x * y + y * y) ** 3)),
        ("H5", RatFunc(X ** 3 + Y ** 3 + 1, X * Y)),
    ]
    for id_, r in pairs:
        assert is_first_integral(r, catalog.get(id_).web.nonlinear), id_
