import pytest

from webcurv import catalog
from webcurv.abelrel import pi_bound, verify_relation
from webcurv.algebra import QQ, QQ_XI3, MultiPoly, normalize_point
from webcurv.geometry import is_first_integral
from webcurv.webops import curvature, polar_fiber

IDS = catalog.all_ids()
x, y = MultiPoly.x(), MultiPoly.y()


def test_ids_cover_sporadics_and_families():
    for s in catalog.SPORADIC + catalog.FLAT_NONEXCEPTIONAL:
        assert s in IDS
    assert "A_I^4" in IDS and "A_I^3" not in IDS
    assert "A_IV^1" in IDS and "A_IV^6" in IDS and "A_IV^7" not in IDS


@pytest.mark.parametrize("id_", IDS)
def test_entry_is_flat(id_):
    e = catalog.get(id_)
    assert e.expected_flat
    assert curvature(e.foliations()).is_flat


@pytest.mark.parametrize("id_", IDS)
def test_entry_invariants(id_):
    e = catalog.get(id_)
    if e.expected_rank is not None:
        assert e.expected_rank <= pi_bound(2, e.k)
    if e.first_integral is not None:
        assert is_first_integral(e.first_integral, e.web.nonlinear)
    for r in e.relations:
        assert verify_relation(r).passed, (id_, r.description)
    if e.polar_row is not None:
        chk = catalog.polar_row_check(e.web.nonlinear, e.polar_row)
        assert chk["match"] and chk["fibers_ok"]


def test_family_shapes():
    assert catalog.family("A_I", 4).k == 5
    assert catalog.family("A_I", 4).expected_rank == 6
    e = catalog.family("A_III", 2)
    assert e.k == 5 and e.expected_rank == 6
    assert catalog.family("A_IV", 1).k == 5  # k + 4 members
    with pytest.raises(ValueError):
        catalog.family("A_I", 3)
    assert catalog.family("A_I", 3, check=False).k == 4


def test_sporadic_shapes():
    assert catalog.sporadic("B5").k == 5
    assert catalog.sporadic("B8").k == 8
    h = catalog.sporadic("H10")
    assert h.k == 10 and h.field == QQ_XI3
    a6b = catalog.sporadic("A6b")
    assert a6b.k == 6 and len(a6b.relations) == 4
    assert a6b.first_integral.num.normalized() == (x ** 3 + y ** 3).over(QQ_XI3).normalized()


def test_named_first_integrals():
    got = {i: catalog.get(i).first_integral for i in ("deg2_a3h", "A5d", "deg4_a", "H5")}
    assert got["deg2_a3h"].num.normalized() == ((4 * y * y + x * y + 4 * x * x) ** 3 * (x + y)).normalized()
    assert got["deg4_a"].num.normalized() == (x * y * (x + y) * (x * x + x * y + y * y) ** 3).normalized()
    X, Y = MultiPoly.x(QQ_XI3), MultiPoly.y(QQ_XI3)
    assert got["A5d"].num.normalized() == (X * (X ** 3 + Y ** 3)).normalized()
    h5 = got["H5"]
    assert {h5.num.normalized(), h5.den.normalized()} == {(X ** 3 + Y ** 3 + 1).normalized(), (X * Y).normalized()}


def test_flat_nonexceptional_have_no_stated_rank():
    for i in catalog.FLAT_NONEXCEPTIONAL:
        assert catalog.get(i).expected_rank is None


def test_tori_not_supported():
    for t in catalog.TORI:
        with pytest.raises(catalog.NotSupported, match="theta"):
            catalog.get(t)


def test_unknown_and_guarded_ids():
    with pytest.raises(KeyError):
        catalog.get("Z9")
    with pytest.raises(ValueError):
        catalog.get("A_I^7")
    assert catalog.get("A_I^7", max_k=7).k == 8


def test_table1_normal_forms():
    a4 = catalog.table1_row("a4")
    K = a4.polar.field
    assert a4.polar.P.to_poly() == (y * y).over(K)
    assert a4.polar.Q.to_poly() == (-x * x).over(K)
    c2 = catalog.table1_row("c2")
    assert c2.polar.P.to_poly() == x ** 3 * (2 * y + x)
    assert c2.polar.Q.to_poly() == -(y ** 3) * (2 * x + y)
    a1 = catalog.table1_row("a1")
    assert a1.polar.P.to_poly() == x * (2 * y + x)
    assert a1.polar.Q.to_poly() == -y * (2 * x + y)


@pytest.mark.parametrize("label", catalog.TABLE1)
def test_table1_fibers(label):
    row = catalog.table1_row(label)
    for q, expected in row.expected_fibers():
        pts, res = polar_fiber(row.polar, q)
        got = {normalize_point(p, row.polar.field): m for p, m in pts}
        assert res.degree == 0
        assert got == {normalize_point(p, row.polar.field): m for p, m in expected.items()}


def test_table1_fiber_c1():
    row = catalog.table1_row("c1")
    q, fib = row.expected_fibers()[0]
    assert fib == {(QQ.one(), QQ.zero()): 1, (QQ.coerce(-1) / 2, QQ.one()): 3}


def test_a5d_chart_is_equivalent_presentation():
    e = catalog.a5d_chart()
    assert e.k == 5 and curvature(e.foliations()).is_flat
    assert is_first_integral(e.first_integral, e.web.nonlinear)
