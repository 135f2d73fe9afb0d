"""Curvature of completely decomposable webs."""

import os
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations

from ..algebra import INFINITY, NEG_INFINITY, MultiPoly, RatFunc, valuation
from ..geometry import (OneForm, TwoForm, Web, discriminant, exterior_d, foliation_degree,
                        is_invariant, sigma, tangency, wedge)


def _dx(p):
    return p.diff("x")


def _dy(p):
    return p.diff("y")


def _triple_data(Fr, Fs, Ft):
    """Numerators of eta_rst over the common denominator det = d_rs d_st d_tr.

    Sign convention: eta solves d(theta) = theta ^ eta for theta = d_st w_r
    and theta = d_tr w_s.
    """
    d_rs, d_st, d_tr = sigma(Fr, Fs), sigma(Fs, Ft), sigma(Ft, Fr)
    if d_rs.is_zero() or d_st.is_zero() or d_tr.is_zero():
        raise ValueError("degenerate triple: coincident foliations")
    t1x, t1y = d_st * Fr.a, d_st * Fr.b
    t2x, t2y = d_tr * Fs.a, d_tr * Fs.b
    D1 = _dx(t1y) - _dy(t1x)
    D2 = _dx(t2y) - _dy(t2x)
    det = d_rs * d_st * d_tr
    Np = D1 * t2x - D2 * t1x
    Nq = D1 * t2y - D2 * t1y
    return Np, Nq, det, (d_rs, d_st, d_tr)


def eta_triple(Fr, Fs, Ft):
    Np, Nq, det, (d_rs, _, _) = _triple_data(Fr, Fs, Ft)
    eta = OneForm(RatFunc(Np, det), RatFunc(Nq, det)) if not (Np.is_zero() and Nq.is_zero()) else None
    # third equation: d(d_rs w_t) = theta3 ^ eta
    t3 = OneForm(d_rs * Ft.a, d_rs * Ft.b)
    lhs = exterior_d(t3)
    rhs = TwoForm(MultiPoly.zero(Fr.field)) if eta is None else wedge(t3, eta)
    assert lhs == rhs, "third structure equation failed"
    if eta is None:
        return _zero_form(Fr.field)
    return eta


class _ZeroOneForm(OneForm):
    """The zero 1-form; only produced as an eta representative."""

    def __init__(self, field):
        self.a = RatFunc(MultiPoly.zero(field))
        self.b = RatFunc(MultiPoly.zero(field))


def _zero_form(field):
    return _ZeroOneForm(field)


def _k_numerator(Fr, Fs, Ft):
    """K_rst = num / (d_rs d_st d_tr)^2."""
    Np, Nq, det, ds = _triple_data(Fr, Fs, Ft)
    num = det * (_dx(Nq) - _dy(Np)) - (Nq * _dx(det) - Np * _dy(det))
    return num, ds


def _threads():
    try:
        return max(1, int(os.environ.get("WEBCURV_THREADS", "1")))
    except ValueError:
        return 1


class CurvatureReport:
    def __init__(self, web, K, triple_count):
        self.web = web
        self.K = K
        self.triple_count = triple_count
        self._eta = None

    @property
    def is_flat(self):
        return self.K.is_zero()

    @property
    def eta(self):
        """Sum of the triple representatives, built on first access."""
        if self._eta is None:
            total = None
            for r, s, t in combinations(range(len(self.web)), 3):
                e = eta_triple(self.web[r], self.web[s], self.web[t])
                if e.a.is_zero() and e.b.is_zero():
                    continue
                total = e if total is None else OneForm(total.a + e.a, total.b + e.b)
            self._eta = total if total is not None else _zero_form(self.web.field)
        return self._eta

    def __repr__(self):
        return f"CurvatureReport(flat={self.is_flat}, triples={self.triple_count})"


def curvature(W):
    if not isinstance(W, Web):
        W = Web(W)
    k = len(W)
    if k < 3:
        raise ValueError("curvature needs at least three foliations")
    field = W.field
    linear = [foliation_degree(F) == 0 for F in W]
    triples = list(combinations(range(k), 3))
    # triples of pencils of lines are flat
    work = [t for t in triples if not all(linear[i] for i in t)]

    def job(t):
        r, s, u = t
        num, (d_rs, d_st, d_tr) = _k_numerator(W[r], W[s], W[u])
        return t, num, {(r, s): d_rs, (s, u): d_st, (r, u): d_tr}

    n = _threads()
    if n > 1 and len(work) > 1:
        with ThreadPoolExecutor(n) as ex:
            parts = list(ex.map(job, work))
    else:
        parts = [job(t) for t in work]
    parts = [p for p in parts if not p[1].is_zero()]
    if not parts:
        return CurvatureReport(W, TwoForm(MultiPoly.zero(field)), len(triples))
    # common denominator: product of squares of every delta that occurs
    deltas = {}
    for _, _, ds in parts:
        for key, d in ds.items():
            deltas.setdefault(key, d)
    keys = sorted(deltas)
    sq = {key: deltas[key] * deltas[key] for key in keys}
    total = MultiPoly.zero(field)
    for _, num, ds in parts:
        # det^2 does not see the orientation of each delta
        term = num
        for key in keys:
            if key not in ds:
                term = term * sq[key]
        total = total + term
    if total.is_zero():
        return CurvatureReport(W, TwoForm(MultiPoly.zero(field)), len(triples))
    den = MultiPoly.one(field)
    for key in keys:
        d = deltas[key]
        for _ in range(2):
            q, ok = total.divmod_exact(d)
            if ok and not d.is_constant():
                total = q
            else:
                den = den * d
    return CurvatureReport(W, TwoForm(RatFunc(total, den)), len(triples))


def pole_order_along(T, h):
    """Order of the pole of a 2-form along {h = 0}; NEG_INFINITY for T = 0."""
    if T.is_zero():
        return NEG_INFINITY
    return valuation(T.c.den, h) - valuation(T.c.num, h)


def check_TT(F, W, C):
    """Both sides of the holomorphy criterion along a tangency component C.

    Holomorphy of K(F x W) along C versus C being invariant by the first
    foliation of W or by its barycenter with respect to the others.
    """
    from .barycenter import barycenter_foliation

    if not isinstance(W, Web):
        W = Web(W)
    F1 = W[0]
    violations = []
    if not C.divides(tangency(F, F1)):
        violations.append("C is not a component of tang(F, F1)")
    if len(W) >= 2 and not discriminant(W).is_constant() and C.divides(discriminant(W)):
        violations.append("C lies in the discriminant of W")
    total = Web((F,) + W.foliations)
    K = curvature(total).K
    holo = pole_order_along(K, C) <= 0
    inv1 = is_invariant(C, F1)
    if len(W) >= 2:
        rest = W.without(0)
        bary = barycenter_foliation(F1, rest)
        invb = is_invariant(C, bary)
    else:
        invb = False
    return {
        "holomorphic": holo,
        "C_invariant_by_F1": inv1,
        "C_invariant_by_barycenter": invb,
        "consistent": holo == (inv1 or invb),
        "violations": violations,
    }


__all__ = ["CurvatureReport", "eta_triple", "curvature", "pole_order_along", "check_TT",
           "INFINITY"]
