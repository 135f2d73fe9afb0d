import io
import json
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings, strategies as st

from webcurv.cli import main
from webcurv.cli.dsl import (Bin, Directive, Document, FolDecl, Name, Num, PolDecl, SpecError,
                             Unary, WebDecl, Bracket, load, parse_spec, show)
from webcurv.cli.report import Check, make_report
from webcurv.geometry import Foliation, is_first_integral
from webcurv.algebra import MultiPoly, RatFunc

SPEC = """# the hexagonal web of x, y and x^3 + y^3
field Q(xi3: t^2+t+1);
pol g = x^3 + y**3;
fol F = d(g);
web W = [dx]*[dy]*F;
verify W;
"""


def run(argv):
    buf = io.StringIO()
    code = main(argv, out=buf)
    return code, buf.getvalue()


def test_parse_example_document():
    doc = parse_spec(SPEC)
    kinds = [type(d).__name__ for d in doc.decls]
    assert kinds == ["FieldDecl", "PolDecl", "FolDecl", "WebDecl", "Directive"]
    assert parse_spec(show(doc)) == doc


def test_form_call_builds_deg4_foliation():
    env = load("fol G = form((y)*(2*x+y)^3, (x)*(2*y+x)^3);")
    x, y = MultiPoly.x(), MultiPoly.y()
    info = env.fols["G"]
    assert info.foliation == Foliation(y * (2 * x + y) ** 3, x * (2 * y + x) ** 3)
    assert is_first_integral(RatFunc(x * y * (x + y) * (x * x + x * y + y * y) ** 3), info.foliation)


def test_bracket_block_splits_into_pencils():
    env = load("field Q(xi3: t^2+t+1); web W = [dx^3 + dy^3]*d(x*y);")
    assert len(env.webs["W"]) == 4


def test_unknown_name_has_position():
    with pytest.raises(SpecError) as ei:
        load("fol F = d(x);\nweb W = [dx]*G;")
    assert ei.value.pos == (2, 14)
    assert str(ei.value).startswith("2:14:")


def test_lexical_error_position():
    with pytest.raises(SpecError) as ei:
        parse_spec("pol p = x $ y;")
    assert ei.value.pos == (1, 11)


def test_syntax_error_position():
    with pytest.raises(SpecError) as ei:
        parse_spec("pol p = (x + ;")
    assert ei.value.pos == (1, 14)


def test_reserved_name():
    with pytest.raises(SpecError):
        parse_spec("pol x = y;")


names = st.sampled_from(["g", "h", "u1", "p_q", "w"])
leaves = st.one_of(st.integers(0, 50).map(Num), names.map(Name), st.sampled_from(["x", "y"]).map(Name))


def _ext(children):
    return st.one_of(
        st.tuples(st.sampled_from(["-", "+"]), children).map(lambda t: Unary(t[0], t[1])),
        st.tuples(st.sampled_from(["+", "-", "*", "/", "^"]), children, children).map(
            lambda t: Bin(t[0], t[1], t[2])),
    )


exprs = st.recursive(leaves, _ext, max_leaves=12)
decls = st.one_of(
    st.tuples(names, exprs).map(lambda t: PolDecl(t[0], t[1])),
    st.tuples(names, exprs).map(lambda t: FolDecl(t[0], Bracket(t[1]))),
    st.tuples(names, st.lists(names.map(Name), min_size=1, max_size=4)).map(
        lambda t: WebDecl(t[0], tuple(t[1]))),
    st.tuples(st.sampled_from(["verify", "rank", "plot"]), names).map(lambda t: Directive(t[0], t[1], ())),
)


@settings(max_examples=200)
@given(st.lists(decls, max_size=6))
def test_parse_show_round_trip(ds):
    doc = Document(tuple(ds))
    text = show(doc)
    again = parse_spec(text)
    assert again == doc
    assert show(again) == text


def test_verify_catalog_entry_passes():
    code, out = run(["verify", "B5"])
    rep = json.loads(out)
    assert code == 0 and rep["passed"]
    assert rep["schema"] == "webcurv-report/1"
    names = [c["name"] for c in rep["checks"]]
    assert names[0] == "flatness"
    assert all(c["wall_time"] is None for c in rep["checks"])


def test_verify_reports_are_deterministic():
    a = run(["verify", "A5a"])[1]
    b = run(["verify", "A5a"])[1]
    assert a == b


def test_timings_flag_fills_wall_time():
    rep = json.loads(run(["verify", "A5a", "--timings"])[1])
    assert all(isinstance(c["wall_time"], float) for c in rep["checks"])


def test_verify_spec_file(tmp_path):
    p = tmp_path / "w.web"
    p.write_text(SPEC)
    code, out = run(["verify", str(p)])
    assert code == 0 and json.loads(out)["passed"]


def test_verify_non_flat_spec_fails_with_witness(tmp_path):
    p = tmp_path / "bad.web"
    p.write_text("fol F = form(y, 1);\nfol L = form(y, -x);\nweb W = F*[dy]*L;\nverify W;\n")
    code, out = run(["verify", str(p)])
    rep = json.loads(out)
    assert code == 1 and not rep["passed"]
    flat = next(c for c in rep["checks"] if c["name"] == "flatness")
    assert flat["status"] == "fail" and flat["witness"]


def test_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "broken.web"
    p.write_text("fol F = d(x;\n")
    code, _ = run(["verify", str(p)])
    assert code == 2
    assert ":1:12:" in capsys.readouterr().err


def test_unknown_target_and_tori(capsys):
    assert run(["verify", "nope"])[0] == 2
    assert run(["verify", "E5"])[0] == 2
    assert "theta" in capsys.readouterr().err


def test_usage_error_exit_code():
    assert run(["frobnicate"])[0] == 2


def test_rank_command():
    code, out = run(["rank", "B5", "--order", "10"])
    res = json.loads(out)["result"]
    assert code == 0
    assert res["dimension"] == 6 and res["pi_bound"] == 6 and res["stabilized"]


def test_rank_with_base(tmp_path):
    code, out = run(["rank", "A5a", "--order", "8", "--base", "1/2,3"])
    res = json.loads(out)["result"]
    assert res["dimension"] == 6 and res["base_point"] == ["1/2", "3"]


def test_catalog_list_and_show():
    code, out = run(["catalog", "list"])
    assert code == 0 and "H10" in out and "A_IV^6" in out
    code, out = run(["catalog", "show", "deg4_a", "--json"])
    info = json.loads(out)
    assert code == 0 and info["id"] == "deg4_a" and info["k"] == 5


def test_plot_writes_svg(tmp_path):
    out = tmp_path / "b5.svg"
    code, _ = run(["plot", "B5", "--region=-2,3,-2,3", "--grid", "96", "--out", str(out)])
    assert code == 0
    root = ET.parse(out).getroot()
    assert root.tag.endswith("svg")
    groups = [g for g in root if g.tag.endswith("g")]
    assert len(groups) == 5
    assert sum(1 for g in groups for p in g if p.tag.endswith("polyline")) > 10


def test_plot_degenerate_region(tmp_path):
    code, _ = run(["plot", "B5", "--region=1,1,0,2", "--out", str(tmp_path / "x.svg")])
    assert code == 2


def test_plot_series_only_foliation(tmp_path):
    out = tmp_path / "d3.svg"
    code, _ = run(["plot", "deg3_a", "--grid", "64", "--out", str(out)])
    assert code == 0 and out.read_text().startswith("<svg")


def test_report_failures_propagate():
    r = make_report("t", [Check("a", "pass"), Check("b", "skip"), Check("c", "fail", "w")])
    assert r["passed"] is False
    assert list(r) == ["schema", "tool", "version", "target", "passed", "checks"]
