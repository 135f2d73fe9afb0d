"""Command line: webcurv verify | rank | plot | catalog."""

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction

from .. import catalog
from ..abelrel import jet_rank, pencil_first_integral, series_first_integral, verify_relation
from ..geometry import Web, is_first_integral
from ..webops import curvature
from .dsl import SpecError, load
from .report import Check, dumps, make_report, run_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# -- targets ----------------------------------------------------------------------


class Target:
    """A web to work on: either a catalog entry or a web defined in a spec file."""

    def __init__(self, name, members, entry=None, directives=(), expect_flat=True):
        self.name = name
        self.members = members  # list of (label, Foliation, first_integral or None, point or None)
        self.entry = entry
        self.directives = directives
        self.expect_flat = expect_flat

    @property
    def web(self):
        return Web([m[1] for m in self.members])

    @property
    def field(self):
        return self.web.field

    def first_integrals(self, base, order):
        out = []
        for _label, F, r, pt in self.members:
            if r is not None:
                out.append(r)
            elif pt is not None:
                out.append(pencil_first_integral(pt, base, self.field))
            else:
                out.append(series_first_integral(F, base, order))
        return out


def _entry_target(entry):
    members = []
    for p, F in zip(entry.web.linear_points, entry.web.pencils()):
        members.append((f"pencil[{':'.join(str(c) for c in p)}]", F, None, p))
    members.append(("F", entry.web.nonlinear, entry.first_integral, None))
    return Target(entry.id, members, entry, expect_flat=entry.expected_flat)


def _spec_targets(path, web_name=None):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")
    env = load(text)
    digest = hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]
    names = list(env.webs)
    if web_name is not None:
        if web_name not in env.webs:
            raise UsageError(f"{path}: no web named {web_name!r}")
        names = [web_name]
    out = []
    for n in names:
        dirs = [d for d in env.directives if d.target == n]
        flat = True
        for d in dirs:
            for k, v in d.options:
                if d.verb == "verify" and k == "flat":
                    flat = v != "false"
        members = [(fi.label, fi.foliation, fi.first_integral, fi.point) for fi in env.webs[n]]
        out.append((f"spec:{digest}:{n}", Target(n, members, None, dirs, flat)))
    return out


def resolve(target, web_name=None, max_k=6):
    """Catalog id or spec path -> list of (report name, Target)."""
    if os.path.isfile(target):
        return _spec_targets(target, web_name)
    try:
        entry = catalog.get(target, max_k=max_k)
    except catalog.NotSupported as e:
        raise UsageError(str(e))
    except (KeyError, ValueError) as e:
        raise UsageError(f"{target!r} is neither a catalog id nor a readable spec file ({e})")
    return [(entry.id, _entry_target(entry))]


# -- checks -----------------------------------------------------------------------


def _lowest_terms(p, count=4):
    terms = sorted(p.terms.items(), key=lambda t: (t[0][0] + t[0][1], t[0]))[:count]
    return " + ".join(f"({c})*x^{i}*y^{j}" for (i, j), c in terms)


def _flatness(t):
    rep = curvature(t.web)
    flat = rep.is_flat
    witness = None
    if not flat:
        witness = {"numerator_lowest_terms": _lowest_terms(rep.K.c.num)}
    ok = flat == t.expect_flat
    if ok and not flat:
        witness = {"note": "non-flat, as expected"}
    return ok, witness


def _first_integral_checks(t):
    out = []
    for label, F, r, pt in t.members:
        if r is None and pt is None:
            out.append(Check(f"first_integral:{label}", "skip", "no rational first integral"))
            continue
        if r is None:
            continue  # pencils are checked as one group below
        out.append(run_check(f"first_integral:{label}",
                             lambda r=r, F=F: (is_first_integral(r, F), None)))
    pencils = [(label, F, pt) for label, F, r, pt in t.members if r is None and pt is not None]
    if pencils:
        def check_pencils():
            base = t.entry.base_point() if t.entry is not None else None
            bad = []
            for label, F, pt in pencils:
                u = pencil_first_integral(pt, base or _any_base(t), t.field)
                if not is_first_integral(u, F):
                    bad.append(label)
            return not bad, (bad or None)
        out.append(run_check("first_integral:pencils", check_pencils))
    return out


def _any_base(t):
    from ..abelrel import _small_points
    from ..geometry import discriminant
    disc = discriminant(t.web)
    for p in _small_points():
        if not disc.evaluate(*[t.field.coerce(c) for c in p]).is_zero():
            return p
    raise ValueError("no base point off the discriminant")


def verify_checks(t):
    checks = [run_check("flatness", lambda: _flatness(t))]
    checks += _first_integral_checks(t)
    e = t.entry
    if e is not None:
        for k, rel in enumerate(e.relations):
            def one(rel=rel):
                v = verify_relation(rel)
                wit = None if v.passed else {"notes": list(v.notes),
                                             "residual": str(v.constant_residual)}
                return v.passed, wit
            checks.append(run_check(f"relation[{k}]:{rel.description}", one))
        if e.polar_row:
            def polar():
                res = catalog.polar_row_check(e.web.nonlinear, e.polar_row)
                return res["match"] and res["fibers_ok"], None if res["match"] else "no conjugacy found"
            checks.append(run_check(f"polar_row:{e.polar_row}", polar))
    for d in t.directives:
        if d.verb == "rank":
            opts = dict(d.options)
            if "expect" in opts:
                def rk(opts=opts):
                    res = _rank(t, int(opts.get("order", 12)),
                                int(opts["degree"]) if "degree" in opts else None, None)
                    return res.kernel_dimension == int(opts["expect"]), {
                        "kernel_dimension": res.kernel_dimension}
                checks.append(run_check(f"rank=={opts['expect']}", rk))
    return checks


def _rank(t, order, degree, base):
    if base is None:
        base = t.entry.base_point() if t.entry is not None else _any_base(t)
    return jet_rank(t.web, t.first_integrals(base, order), base=base, N=order, D=degree)


def _parse_base(text):
    try:
        a, b = text.split(",")
        return Fraction(a.strip()), Fraction(b.strip())
    except ValueError:
        raise UsageError(f"bad --base {text!r}: expected 'p/q,r/s'")


def _parse_region(text):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        vals = []
    if len(vals) != 4:
        raise UsageError(f"bad --region {text!r}: expected x0,x1,y0,y1")
    if not (vals[1] > vals[0] and vals[3] > vals[2]):
        raise UsageError("degenerate region: need x0 < x1 and y0 < y1")
    return tuple(vals)


# -- verbs ------------------------------------------------------------------------


def cmd_verify(args, out):
    status = EXIT_OK
    reports = []
    for name, t in resolve(args.target, args.web, args.max_k):
        checks = verify_checks(t)
        rep = make_report(name, checks, args.timings)
        reports.append(rep)
        if not rep["passed"]:
            status = EXIT_FAIL
    out.write(dumps(reports[0] if len(reports) == 1 else reports))
    return status


def cmd_rank(args, out):
    base = _parse_base(args.base) if args.base else None
    reports = []
    for name, t in resolve(args.target, args.web, args.max_k):
        holder = {}

        def run():
            res = _rank(t, args.order, args.degree, base)
            holder["res"] = res
            return True, None
        chk = run_check("jet_rank", run)
        extra = None
        if "res" in holder:
            res = holder["res"]
            extra = {
                "dimension": res.kernel_dimension,
                "stabilized": res.stabilized,
                "pi_bound": res.pi,
                "order": res.jet_order,
                "degree_cap": res.degree_cap,
                "base_point": [str(c) for c in res.base_point],
                "history": {str(k): v for k, v in sorted(res.history.items())},
            }
            if t.entry is not None and t.entry.expected_rank is not None:
                extra["expected_rank"] = t.entry.expected_rank
        reports.append(make_report(name, [chk], args.timings, extra))
    out.write(dumps(reports[0] if len(reports) == 1 else reports))
    return EXIT_OK if all(r["passed"] for r in reports) else EXIT_FAIL


def cmd_plot(args, out):
    from .plot import render_svg
    region = _parse_region(args.region)
    if args.grid < 4:
        raise UsageError("--grid must be at least 4")
    targets = resolve(args.target, args.web, args.max_k)
    name, t = targets[0]
    members = [(label, r, F) for label, F, r, pt in t.members]
    for i, (label, F, r, pt) in enumerate(t.members):
        if r is None and pt is not None:
            members[i] = (label, pencil_first_integral(pt, _any_base(t), t.field), F)
    svg, nonreal = render_svg(members, region, args.grid, title=name)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    if nonreal:
        print("warning: non-real data, only the real slice of the real part is drawn",
              file=sys.stderr)
    out.write(f"wrote {args.out}\n")
    return EXIT_OK


def _entry_summary(e):
    return {
        "id": e.id,
        "k": len(e.web),
        "field": e.field.label,
        "linear_points": [[str(c) for c in p] for p in e.web.linear_points],
        "nonlinear": {"a": str(e.web.nonlinear.a), "b": str(e.web.nonlinear.b)},
        "first_integral": None if e.first_integral is None else str(e.first_integral),
        "expected_flat": e.expected_flat,
        "expected_rank": e.expected_rank,
        "relations": [r.description for r in e.relations],
        "polar_row": e.polar_row,
        "note": e.note or None,
    }


def cmd_catalog(args, out):
    if args.action == "list":
        ids = catalog.all_ids(args.max_k)
        if args.json:
            out.write(json.dumps(ids, indent=2) + "\n")
        else:
            out.write("\n".join(ids) + "\n")
        return EXIT_OK
    if not args.id:
        raise UsageError("catalog show needs an id")
    try:
        e = catalog.get(args.id, max_k=args.max_k)
    except catalog.NotSupported as ex:
        raise UsageError(str(ex))
    except (KeyError, ValueError) as ex:
        raise UsageError(str(ex))
    out.write(json.dumps(_entry_summary(e), indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="webcurv", description="Exact checks on planar webs.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("target", help="catalog id or spec file")
        sp.add_argument("--web", help="web name inside a spec file")
        sp.add_argument("--max-k", type=int, default=6, help="largest family parameter allowed")
        sp.add_argument("--timings", action="store_true", help="record wall times in the report")

    v = sub.add_parser("verify", help="run flatness, first-integral, relation and polar checks")
    common(v)
    r = sub.add_parser("rank", help="jet-rank estimate")
    common(r)
    r.add_argument("--order", type=int, default=12)
    r.add_argument("--degree", type=int, default=None)
    r.add_argument("--base", default=None, help="base point 'p/q,r/s'")
    pl = sub.add_parser("plot", help="SVG of real leaves")
    common(pl)
    pl.add_argument("--region", default="-2,2,-2,2")
    pl.add_argument("--grid", type=int, default=512)
    pl.add_argument("--out", default="web.svg")
    c = sub.add_parser("catalog", help="list or show catalog entries")
    c.add_argument("action", choices=("list", "show"))
    c.add_argument("id", nargs="?")
    c.add_argument("--json", action="store_true")
    c.add_argument("--max-k", type=int, default=6)
    return p


VERBS = {"verify": cmd_verify, "rank": cmd_rank, "plot": cmd_plot, "catalog": cmd_catalog}


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return VERBS[args.verb](args, out)
    except SpecError as e:
        print(f"{getattr(args, 'target', '')}:{e}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as e:
        print(f"webcurv: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError) as e:
        print(f"webcurv: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
