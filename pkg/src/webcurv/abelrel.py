"""Abelian relations: exact verification of explicit relations and jet-based rank."""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations

import flint
import mpmath

from .algebra import (QQ, FieldScalar, JetSeries, MultiPoly, RatFunc, is_squarefree,
                      poly_gcd, taylor_jet, valuation)
from .algebra.poly import _common_field
from .geometry import OneForm, Web, discriminant

# -- logarithmic expressions ------------------------------------------------


class LogBasis:
    """Generators g_i whose logarithms L_i are treated as independent symbols."""

    def __init__(self, gens):
        gens = [g.normalized() for g in gens]
        for g in gens:
            if g.is_constant():
                raise ValueError("log generators must be non-constant")
            if not is_squarefree(g):
                raise ValueError(f"log generator {g} is not square-free")
        for g, h in combinations(gens, 2):
            if not poly_gcd(g, h).is_constant():
                raise ValueError(f"log generators {g} and {h} are not coprime")
        self.gens = tuple(gens)
        f = QQ
        for g in gens:
            f = _common_field(f, g.field)
        self.field = f

    def __len__(self):
        return len(self.gens)

    def index(self, g):
        g = g.normalized()
        return self.gens.index(g)

    def _split(self, p):
        exps = {}
        for i, g in enumerate(self.gens):
            v = valuation(p, g)
            if v:
                exps[i] = v
                p = p.exquo(g ** v)
        if not p.is_constant():
            raise ValueError(f"{p} is not a product of the log generators")
        return p.constant_value(), exps

    def decompose(self, r):
        """ln r = ln c + sum e_i L_i; returns (c, {i: e_i})."""
        r = r if isinstance(r, RatFunc) else RatFunc(r)
        if r.is_zero():
            raise ValueError("log of zero")
        cn, en = self._split(r.num)
        cd, ed = self._split(r.den)
        exps = dict(en)
        for i, e in ed.items():
            exps[i] = exps.get(i, 0) - e
        return cn / cd, {i: e for i, e in exps.items() if e}


def _is_one(c):
    return c == 1


class LogExpression:
    """R + sum a_i L_i + sum b_ij L_i L_j (+ formal logs of constants).

    ``source`` keeps the expression as written, as a list of
    (coefficient, kind, args) with kind in {"rat", "log", "log2"}; the numeric
    constant check evaluates that list directly with principal logarithms.
    """

    def __init__(self, basis, rational_part=None, linear=None, quadratic=None, const_logs=None,
                 source=None):
        self.basis = basis
        f = basis.field
        self.rational_part = rational_part if rational_part is not None else RatFunc.const(f, 0)
        self.linear = {i: c for i, c in (linear or {}).items() if not c.is_zero()}
        q = {}
        for (i, j), c in (quadratic or {}).items():
            key = (min(i, j), max(i, j))
            q[key] = q.get(key, f.zero()) + c
        self.quadratic = {k: c for k, c in q.items() if not c.is_zero()}
        self.const_logs = {k: c for k, c in (const_logs or {}).items() if not c.is_zero()}
        self.source = list(source or [])

    # builders

    @classmethod
    def rational(cls, basis, r, coeff=1):
        f = basis.field
        r = r if isinstance(r, RatFunc) else RatFunc(r)
        c = f.coerce(coeff)
        return cls(basis, rational_part=r * c, source=[(c, "rat", (r,))])

    @classmethod
    def log(cls, basis, r, coeff=1):
        f = basis.field
        c = f.coerce(coeff)
        unit, exps = basis.decompose(r)
        const_logs = {} if _is_one(unit) else {unit: c}
        return cls(basis, linear={i: c * e for i, e in exps.items()}, const_logs=const_logs,
                   source=[(c, "log", (_rf(r),))])

    @classmethod
    def log2(cls, basis, r, s=None, coeff=1):
        """coeff * ln(r) * ln(s), with s = r by default."""
        f = basis.field
        c = f.coerce(coeff)
        s = r if s is None else s
        u1, e1 = basis.decompose(r)
        u2, e2 = basis.decompose(s)
        if not (_is_one(u1) and _is_one(u2)):
            raise ValueError("log-squared terms need unit-free arguments")
        quad = {}
        for i, a in e1.items():
            for j, b in e2.items():
                key = (min(i, j), max(i, j))
                quad[key] = quad.get(key, f.zero()) + c * a * b
        return cls(basis, quadratic=quad, source=[(c, "log2", (_rf(r), _rf(s)))])

    # arithmetic

    def __add__(self, other):
        f = self.basis.field
        lin = dict(self.linear)
        for i, c in other.linear.items():
            lin[i] = lin.get(i, f.zero()) + c
        quad = dict(self.quadratic)
        for k, c in other.quadratic.items():
            quad[k] = quad.get(k, f.zero()) + c
        cl = dict(self.const_logs)
        for k, c in other.const_logs.items():
            cl[k] = cl.get(k, f.zero()) + c
        return LogExpression(self.basis, self.rational_part + other.rational_part, lin, quad, cl,
                             self.source + other.source)

    def scale(self, c):
        c = self.basis.field.coerce(c)
        return LogExpression(self.basis, self.rational_part * c,
                             {i: v * c for i, v in self.linear.items()},
                             {k: v * c for k, v in self.quadratic.items()},
                             {k: v * c for k, v in self.const_logs.items()},
                             [(a * c, kind, args) for a, kind, args in self.source])

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def log_degree(self):
        if self.quadratic:
            return 2
        if self.linear or self.const_logs:
            return 1
        return 0

    def evaluate(self, point, dps=40):
        """Numeric value of the expression as written, principal branch."""
        with mpmath.workdps(dps):
            total = mpmath.mpc(0)
            for c, kind, args in self.source:
                vals = [a.evaluate(*point).to_complex(dps) for a in args]
                if kind == "rat":
                    term = vals[0]
                elif kind == "log":
                    term = mpmath.log(vals[0])
                else:
                    term = mpmath.log(vals[0]) * mpmath.log(vals[1])
                total += c.to_complex(dps) * term
            return total

    def __repr__(self):
        return (f"LogExpression(rational={self.rational_part}, linear={self.linear}, "
                f"quadratic={self.quadratic})")


def _rf(r):
    return r if isinstance(r, RatFunc) else RatFunc(r)


class LogOneForm:
    """A 1-form whose coefficients are polynomials of degree <= 1 in the L_i.

    parts maps () to the rational part and (i,) to the coefficient of L_i,
    each stored as a pair of RatFuncs (dx and dy coefficients).
    """

    def __init__(self, basis, parts):
        self.basis = basis
        self.parts = {k: v for k, v in parts.items() if not (v[0].is_zero() and v[1].is_zero())}

    def is_zero(self):
        return not self.parts

    def part(self, key):
        zero = RatFunc.const(self.basis.field, 0)
        return self.parts.get(key, (zero, zero))

    def wedge_zero(self, F):
        """True iff every coefficient 1-form is a multiple of omega_F."""
        return all((a * F.b - b * F.a).is_zero() for a, b in self.parts.values())


def d_log_expression(e):
    basis = e.basis
    f = basis.field
    zero = RatFunc.const(f, 0)
    parts = {}

    def add(key, a, b):
        pa, pb = parts.get(key, (zero, zero))
        parts[key] = (pa + a, pb + b)

    r = e.rational_part
    add((), r.diff("x"), r.diff("y"))
    dlog = {}

    def dl(i):
        if i not in dlog:
            g = RatFunc(basis.gens[i])
            dlog[i] = (g.diff("x") / g, g.diff("y") / g)
        return dlog[i]

    for i, c in e.linear.items():
        a, b = dl(i)
        add((), a * c, b * c)
    for (i, j), c in e.quadratic.items():
        ai, bi = dl(i)
        aj, bj = dl(j)
        add((i,), aj * c, bj * c)
        add((j,), ai * c, bi * c)
    return LogOneForm(basis, parts)


@dataclass
class RelationCandidate:
    web: Web
    terms: list
    declared_kind: str = "logarithmic"
    description: str = ""

    def __post_init__(self):
        if self.declared_kind not in ("polynomial", "logarithmic", "log-squared"):
            raise ValueError(f"unknown relation kind {self.declared_kind!r}")
        if not self.terms:
            raise ValueError("empty relation")

    def total(self):
        out = None
        for _, e in self.terms:
            out = e if out is None else out + e
        return out


@dataclass
class Verdict:
    symbolic_d_zero: bool
    constant_checked: bool
    constant_residual: float
    terms_invariant: bool
    base_point: tuple = None
    notes: list = dc_field(default_factory=list)

    @property
    def passed(self):
        return self.symbolic_d_zero and self.constant_checked and self.terms_invariant


def _small_points(bound=8):
    """Deterministic scan of small-height rationals, nearest to the origin first."""
    vals = sorted({Fraction(p, q) for q in range(1, bound + 1) for p in range(-bound, bound + 1)},
                  key=lambda v: (abs(v.numerator) + v.denominator, v < 0, v))
    for s in range(len(vals) * 2):
        for i in range(min(s + 1, len(vals))):
            j = s - i
            if j < len(vals):
                yield (vals[i], vals[j])


def _arg_values(rel, pt):
    out = []
    for _, e in rel.terms:
        for _, kind, args in e.source:
            if kind == "rat":
                continue
            for a in args:
                out.append(a.evaluate(*pt))
    return out


def _pick_base(rel, budget=200):
    """First small point where every log argument is a positive rational, else the first usable one."""
    fallback = None
    for n, pt in enumerate(_small_points()):
        if fallback is not None and n >= budget:
            break
        try:
            vals = _arg_values(rel, pt)
            for _, e in rel.terms:  # rational parts must be regular too
                for _, kind, args in e.source:
                    if kind == "rat":
                        for a in args:
                            a.evaluate(*pt)
        except ZeroDivisionError:
            continue
        if any(v.is_zero() for v in vals):
            continue
        if all(v.is_rational() and v.to_rational() > 0 for v in vals):
            return pt, True
        if fallback is None:
            fallback = pt
    return fallback, False


def verify_relation(r, base=None, tol=mpmath.mpf(10) ** -30):
    notes = []
    inv = all(d_log_expression(e).wedge_zero(r.web[i]) for i, e in r.terms)
    total = r.total()
    dz = d_log_expression(total).is_zero()
    if r.declared_kind == "polynomial" or total.log_degree() == 0 and not any(
            kind != "rat" for _, e in r.terms for _, kind, _ in e.source):
        exact = total.rational_part.is_zero() and not total.linear and not total.quadratic
        return Verdict(dz, exact, 0.0, inv, None, ["exact polynomial identity"])
    if base is None:
        base, positive = _pick_base(r)
    else:
        positive = all(v.is_rational() and v.to_rational() > 0 for v in _arg_values(r, base))
    with mpmath.workprec(120):
        value = sum((e.evaluate(base, dps=40) for _, e in r.terms), mpmath.mpc(0))
        if positive:
            resid = abs(value)
        else:
            # principal branches may differ by multiples of 2 pi i
            two_pi_i = 2 * mpmath.pi
            n = mpmath.nint(mpmath.im(value) / two_pi_i)
            resid = abs(value - mpmath.mpc(0, 1) * two_pi_i * n)
            notes.append("complex base point: residual taken modulo 2*pi*i")
        ok = resid < tol
    return Verdict(dz, bool(ok), float(resid), inv, base, notes)


# -- exact linear algebra over a number field ----------------------------------


def solve_linear(rows, rhs, field):
    """Unique solution of rows * v = rhs over the field (least-squares systems must be consistent)."""
    n = len(rows[0])
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, len(a)) if not a[i][c].is_zero()), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = a[r][c].inverse()
        a[r] = [v * inv for v in a[r]]
        for i in range(len(a)):
            if i != r and not a[i][c].is_zero():
                fct = a[i][c]
                a[i] = [u - fct * v for u, v in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, len(a)):
        if not a[i][n].is_zero():
            raise ValueError("inconsistent system")
    if r < n:
        raise ValueError("solution is not unique")
    sol = [field.zero()] * n
    for i, c in enumerate(piv_cols):
        sol[c] = a[i][n]
    return sol


def solve_mu(k):
    """mu_i with (xy)^(k-1) = sum_i mu_i (x - xi_k^i y)^(2k-2), i = 1..k."""
    from .algebra import cyclotomic_field, root_of_unity

    f = cyclotomic_field(k)
    xi = root_of_unity(k)
    x, y = MultiPoly.x(f), MultiPoly.y(f)
    n = 2 * k - 2
    forms = [(x - y * xi ** i) ** n for i in range(1, k + 1)]
    target = (x * y) ** (k - 1)
    rows = [[p.coefficient(n - m, m) for p in forms] for m in range(n + 1)]
    rhs = [target.coefficient(n - m, m) for m in range(n + 1)]
    return solve_linear(rows, rhs, f)


# -- jets and rank ---------------------------------------------------------------


def pi_bound(n, k):
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    total = 0
    j = 1
    while k - j * (n - 1) - 1 > 0:
        total += k - j * (n - 1) - 1
        j += 1
    return total


def _integrate_x(p):
    f = p.field
    return MultiPoly(f, {(i + 1, j): c / (i + 1) for (i, j), c in p.terms.items()})


def series_first_integral(F, base, order):
    """Jet of a local first integral of F at a regular point.

    Normalized to restrict to the coordinate along the transversal axis:
    u(x0, y0 + Y) = Y when b(base) != 0, else u(x0 + X, y0) = X.
    """
    f = F.field
    x0, y0 = (f.coerce(c) for c in base)
    a0, b0 = F.a.evaluate(x0, y0), F.b.evaluate(x0, y0)
    if a0.is_zero() and b0.is_zero():
        raise ValueError("base point is singular")
    swap = b0.is_zero()
    a, b = (F.b, F.a) if swap else (F.a, F.b)
    X, Y = MultiPoly.x(f), MultiPoly.y(f)
    if swap:
        # exchange the roles of x and y
        a = a.compose(Y, X)
        b = b.compose(Y, X)
        x0, y0 = y0, x0
    # u_x = (a/b) u_y
    c = taylor_jet(RatFunc(a, b), (x0, y0), order)
    u = JetSeries(f, (x0, y0), order, Y)
    for _ in range(order):
        uy = JetSeries(f, (x0, y0), order, u.local_poly().diff("y"))
        rhs = (c * uy).local_poly()
        u = JetSeries(f, (x0, y0), order, Y + _integrate_x(rhs))
    if swap:
        p = u.local_poly().compose(Y, X)
        u = JetSeries(f, (y0, x0), order, p)
    return u


@dataclass
class JetRelationSpace:
    web: Web
    base_point: tuple
    jet_order: int
    degree_cap: int
    kernel_dimension: int
    stabilized: bool
    history: dict
    pi: int
    note: str = ""


def _centered_jet(u, base, order):
    if isinstance(u, JetSeries):
        j = JetSeries(u.field, u.base_point, order, u.local_poly())
    else:
        j = taylor_jet(u, base, order)
    return j - j.constant_term()


def _kernel_dim(jets, order, degree, field):
    """dim of {c_{i,e}} with sum_i sum_{e<=D} c_{i,e} j_i^e = 0 mod order+1."""
    monos = [(a, n - a) for n in range(1, order + 1) for a in range(n + 1)]
    row_of = {m: r for r, m in enumerate(monos)}
    cols = []
    for j in jets:
        p = JetSeries(field, j.base_point, order, j.local_poly())
        cur = p
        for e in range(1, degree + 1):
            cols.append(cur.local_poly().terms)
            if e < degree:
                cur = cur * p
    d = field.degree
    nr, nc = len(monos) * d, len(cols) * d
    entries = [[0] * nc for _ in range(nr)]
    for ci, col in enumerate(cols):
        for m, c in col.items():
            r = row_of.get(m)
            if r is None:
                continue
            # multiplication-by-c matrix in the power basis
            for k in range(d):
                prod = c * (field.gen() ** k) if d > 1 else c
                coords = prod.coords
                for s in range(d):
                    v = coords[s]
                    if v:
                        entries[r * d + s][ci * d + k] = v
    if nr == 0 or nc == 0:
        return len(cols)
    # clear denominators row by row and take the exact integer rank
    int_rows = []
    for row in entries:
        den = 1
        for v in row:
            if v:
                den = den * v.denominator // _gcd(den, v.denominator)
        int_rows.append([int(v * den) for v in row])
    rank = flint.fmpz_mat(int_rows).rank()
    assert rank % d == 0
    return len(cols) - rank // d


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def pencil_first_integral(point, base, field=None):
    """First integral of the pencil through [p0:p1:p2], regular at base.

    Affine-linear for points at infinity, a slope otherwise.
    """
    f = field or QQ
    for c in point:
        if isinstance(c, FieldScalar):
            f = _common_field(f, c.field)
    p0, p1, p2 = (f.coerce(c) for c in point)
    x, y = MultiPoly.x(f), MultiPoly.y(f)
    if p2.is_zero():
        return RatFunc(x * p1 - y * p0)
    x0, y0 = p0 / p2, p1 / p2
    bx, by = (f.coerce(c) for c in base)
    if not (bx - x0).is_zero():
        return RatFunc(y - y0, x - x0)
    return RatFunc(x - x0, y - y0)


def _du_nonzero(j):
    return not (j.coefficient(1, 0).is_zero() and j.coefficient(0, 1).is_zero())


def jet_rank(W, first_integrals, base=None, N=12, D=None, min_order=None):
    """Rank of W estimated from relations among truncated jets at a base point."""
    if not isinstance(W, Web):
        W = Web(W)
    if len(first_integrals) != len(W):
        raise ValueError("one first integral per foliation is required")
    f = W.field
    disc = discriminant(W) if len(W) >= 2 else MultiPoly.one(f)
    if base is None:
        base = find_base_point(W, first_integrals, disc)
    base = tuple(f.coerce(c) for c in base)
    if not disc.is_constant() and disc.evaluate(*base).is_zero():
        raise ValueError("base point lies on the discriminant")
    D = N if D is None else D
    jets = []
    for u in first_integrals:
        j = _centered_jet(u, base, N)
        if not _du_nonzero(j):
            raise ValueError("a first integral has vanishing differential at the base point")
        jets.append(j)
    history = {}
    for n in (N - 1, N):
        if n < 1:
            continue
        history[n] = _kernel_dim(jets, n, min(D, n) if D >= N else D, f)
    dim = history[N]
    pi = pi_bound(2, len(W))
    threshold = min_order if min_order is not None else len(W) + 2
    stab = history.get(N - 1) == dim and N >= threshold
    return JetRelationSpace(W, base, N, D, dim, stab, history, pi,
                            note=f"stabilized means equal dimension at orders {N - 1} and {N} with N >= {threshold}")


def find_base_point(W, first_integrals, disc=None):
    f = W.field
    disc = discriminant(W) if disc is None else disc
    for pt in _small_points():
        p = (f.coerce(pt[0]), f.coerce(pt[1]))
        if not disc.is_constant() and disc.evaluate(*p).is_zero():
            continue
        ok = True
        for u in first_integrals:
            if isinstance(u, JetSeries):
                ok = False
                break
            try:
                j = taylor_jet(u, p, 1)
            except ValueError:
                ok = False
                break
            if not _du_nonzero(j):
                ok = False
                break
        if ok:
            return pt
    raise ValueError("no admissible base point of small height")


__all__ = ["LogBasis", "LogExpression", "LogOneForm", "RelationCandidate", "Verdict",
           "JetRelationSpace", "d_log_expression", "verify_relation", "solve_linear", "solve_mu",
           "pi_bound", "pencil_first_integral", "series_first_integral", "jet_rank", "find_base_point"]
