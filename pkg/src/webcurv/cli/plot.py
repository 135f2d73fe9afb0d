"""SVG pictures of the real leaves of a web."""

import xml.etree.ElementTree as ET

import numpy as np
from skimage.measure import find_contours

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
           "#e377c2", "#17becf", "#bcbd22", "#7f7f7f")
SIZE = 600


def _poly_evaluator(p):
    """Vectorized double evaluation of a MultiPoly; also reports non-real coefficients."""
    terms = []
    complex_seen = False
    for (i, j), c in p.terms.items():
        z = complex(c.to_complex())
        if abs(z.imag) > 1e-12 * max(1.0, abs(z.real)):
            complex_seen = True
        terms.append((int(i), int(j), z.real))

    def ev(X, Y):
        out = np.zeros_like(X, dtype=float)
        for i, j, c in terms:
            out = out + c * X ** i * Y ** j
        return out
    return ev, complex_seen


def rat_evaluator(r):
    num, c1 = _poly_evaluator(r.num)
    den, c2 = _poly_evaluator(r.den)

    def ev(X, Y):
        D = den(X, Y)
        with np.errstate(divide="ignore", invalid="ignore"):
            Z = num(X, Y) / D
        # blank cells straddling a pole so no contour runs along it
        flip = np.zeros(D.shape, dtype=bool)
        sx = np.signbit(D[:, 1:]) != np.signbit(D[:, :-1])
        sy = np.signbit(D[1:, :]) != np.signbit(D[:-1, :])
        flip[:, 1:] |= sx
        flip[:, :-1] |= sx
        flip[1:, :] |= sy
        flip[:-1, :] |= sy
        Z[flip] = np.nan
        return Z
    return ev, c1 or c2


def _levels(Z, count):
    vals = Z[np.isfinite(Z)]
    if vals.size == 0:
        return []
    qs = np.quantile(vals, [(k + 0.5) / count for k in range(count)])
    return sorted(set(float(q) for q in qs))


def contour_paths(Z, levels):
    out = []
    Zc = np.where(np.isfinite(Z), Z, np.nan)
    for lev in levels:
        for c in find_contours(Zc, lev):
            if len(c) > 1:
                out.append(c)
    return out


def trace_paths(a, b, region, grid, seeds=8, steps=400):
    """Integral curves of the direction field (b, -a) by fixed-step RK4 in both directions."""
    x0, x1, y0, y1 = region
    h = max(x1 - x0, y1 - y0) / grid

    def field(P):
        vx, vy = b(P[0], P[1]), -a(P[0], P[1])
        n = np.hypot(vx, vy)
        if not np.isfinite(n) or n == 0:
            return None
        return np.array([vx / n, vy / n])

    paths = []
    for sx in np.linspace(x0, x1, seeds + 2)[1:-1]:
        for sy in np.linspace(y0, y1, seeds + 2)[1:-1]:
            line = []
            for sign in (1, -1):
                P = np.array([sx, sy], dtype=float)
                pts = [P.copy()]
                for _ in range(steps):
                    k1 = field(P)
                    k2 = None if k1 is None else field(P + 0.5 * h * sign * k1)
                    k3 = None if k2 is None else field(P + 0.5 * h * sign * k2)
                    k4 = None if k3 is None else field(P + h * sign * k3)
                    if k4 is None:
                        break
                    P = P + h * sign * (k1 + 2 * k2 + 2 * k3 + k4) / 6
                    if not (x0 <= P[0] <= x1 and y0 <= P[1] <= y1):
                        break
                    pts.append(P.copy())
                line = pts[::-1] + line[1:] if sign == -1 else pts
            if len(line) > 1:
                paths.append(np.array(line))
    return paths


def render_svg(members, region, grid=512, levels=12, title="web"):
    """members: list of (label, first_integral RatFunc or None, Foliation)."""
    x0, x1, y0, y1 = region
    if not (x1 > x0 and y1 > y0):
        raise ValueError("degenerate region: need x0 < x1 and y0 < y1")
    xs = np.linspace(x0, x1, grid)
    ys = np.linspace(y0, y1, grid)
    X, Y = np.meshgrid(xs, ys)
    svg = ET.Element("svg", {"xmlns": "http://www.w3.org/2000/svg", "version": "1.1",
                             "width": str(SIZE), "height": str(SIZE),
                             "viewBox": f"0 0 {SIZE} {SIZE}"})
    ET.SubElement(svg, "title").text = title
    ET.SubElement(svg, "rect", {"width": str(SIZE), "height": str(SIZE), "fill": "white"})
    sx = SIZE / (x1 - x0)
    sy = SIZE / (y1 - y0)
    nonreal = False
    for k, (label, r, F) in enumerate(members):
        color = PALETTE[k % len(PALETTE)]
        g = ET.SubElement(svg, "g", {"stroke": color, "fill": "none", "stroke-width": "1"})
        ET.SubElement(g, "title").text = label
        if r is not None:
            ev, cplx = rat_evaluator(r)
            Z = ev(X, Y)
            # contours come back in (row, col) grid coordinates
            paths = [np.column_stack([x0 + c[:, 1] * (x1 - x0) / (grid - 1),
                                      y0 + c[:, 0] * (y1 - y0) / (grid - 1)])
                     for c in contour_paths(Z, _levels(Z, levels))]
        else:
            a, c1 = _poly_evaluator(F.a)
            b, c2 = _poly_evaluator(F.b)
            cplx = c1 or c2
            paths = trace_paths(a, b, region, grid)
        nonreal = nonreal or cplx
        for P in paths:
            pts = " ".join(f"{(px - x0) * sx:.2f},{SIZE - (py - y0) * sy:.2f}" for px, py in P)
            ET.SubElement(g, "polyline", {"points": pts})
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode") + "\n", nonreal
