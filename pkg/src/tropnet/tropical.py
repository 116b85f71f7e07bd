"""Tropicalization of lines and points under a degeneration matrix in t.

A line with dual coordinates ``l`` becomes ``(f, g, h) = m @ l`` and its
tropical limit is the three-ray curve centered at ``(deg h - deg f,
deg h - deg g)``.  Points transform with the cofactor matrix of ``m``
(``adj(m)`` transposed), which keeps incidence: ``p_t . l_t = det(m) p . l``.
"""

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebra.mat3 import mat3_cofactor
from .algebra.rational import as_fraction
from .algebra.unipoly import UniPoly


class VanishingCoordinateError(ValueError):
    """A transformed coordinate is the zero polynomial, so no center exists."""


class DomainError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class TropPoint:
    x: int
    y: int

    def __iter__(self):
        return iter((self.x, self.y))

    def __repr__(self):
        return f"({self.x},{self.y})"


@dataclass(frozen=True, order=True)
class TropLine:
    center: TropPoint

    @classmethod
    def at(cls, x, y):
        return cls(TropPoint(x, y))


def _tp(x):
    return x if isinstance(x, TropPoint) else TropPoint(*x)


def point_transform(m):
    """Matrix acting on point coordinates when ``m`` acts on dual coordinates."""
    return mat3_cofactor(m)


def _degrees(vec, what):
    degs = []
    for i, f in enumerate(vec):
        f = UniPoly.coerce(f)
        if f.is_zero():
            raise VanishingCoordinateError(f"{what}: transformed coordinate {i} vanishes")
        degs.append(f.degree)
    return degs


def trop_line_center(line, m):
    f, g, h = _degrees(m.apply(tuple(line)), f"line {tuple(line)}")
    return TropPoint(h - f, h - g)


def trop_point_location(point, m):
    a, b, c = _degrees(point_transform(m).apply(tuple(point)), f"point {tuple(point)}")
    return TropPoint(a - c, b - c)


def trop_contains(line, pt):
    c = line.center if isinstance(line, TropLine) else _tp(line)
    pt = _tp(pt)
    vals = (pt.x - c.x, pt.y - c.y, 0)
    top = max(vals)
    return sum(v == top for v in vals) >= 2


def centers_through(pt, candidates):
    return [c for c in (_tp(x) for x in candidates) if trop_contains(c, pt)]


# exact linear algebra on forms in (a, b, c)

def rref_forms(rows):
    m = [[as_fraction(x) for x in r] for r in rows]
    col = 0
    ncols = 3
    r = 0
    while r < len(m) and col < ncols:
        piv = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][col]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        col += 1
    return tuple(tuple(row) for row in m[:r])


def reduce_form(form, basis):
    """Remainder of ``form`` modulo the row space of an RREF ``basis``."""
    v = list(form)
    for row in basis:
        p = next(i for i, x in enumerate(row) if x != 0)
        if v[p] != 0:
            f = v[p]
            v = [x - f * y for x, y in zip(v, row)]
    return tuple(v)


def normalize_form(form):
    p = next(x for x in form if x != 0)
    return tuple(x / p for x in form)


def kernel_vector(basis):
    """Spanning vector of the kernel of a rank-2 RREF system."""
    pivots = [next(i for i, x in enumerate(r) if x != 0) for r in basis]
    free = next(i for i in range(3) if i not in pivots)
    v = [Fraction(0)] * 3
    v[free] = Fraction(1)
    for row, p in zip(basis, pivots):
        v[p] = -row[free]
    return tuple(v)


@dataclass(frozen=True)
class SymbolicClass:
    """Coordinates ``v`` with every zero form vanishing and no nonzero form vanishing."""

    zero_forms: tuple
    nonzero_forms: tuple
    location: TropPoint
    degrees: tuple

    @property
    def dimension(self):
        return 3 - len(self.zero_forms)

    @property
    def unique(self):
        return self.dimension == 1

    def contains(self, v):
        v = tuple(as_fraction(x) for x in v)
        dot = lambda f: sum(a * b for a, b in zip(f, v))
        return all(dot(f) == 0 for f in self.zero_forms) and all(dot(f) != 0 for f in self.nonzero_forms)

    def representative(self):
        if not self.unique:
            raise ValueError("class is not a single projective element")
        return kernel_vector(self.zero_forms)

    def describe(self, names="abc"):
        if not self.zero_forms:
            return "no relations"
        return ", ".join(f"{format_form(f, names)}=0" for f in self.zero_forms)

    def sort_key(self):
        return (len(self.zero_forms), self.zero_forms, self.nonzero_forms)


def format_form(form, names="abc"):
    out = ""
    for c, n in zip(form, names):
        if c == 0:
            continue
        mag = abs(c)
        body = n if mag == 1 else f"{mag}{n}"
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += ("-" if c < 0 else "+") + body
    return out or "0"


def _coefficient_forms(m):
    """Per row of ``m``: list of (exponent, linear form) with descending exponent."""
    out = []
    for row in m.rows:
        exps = sorted({e for f in row for e in f.terms}, reverse=True)
        forms = [(e, tuple(f.coeff(e) for f in row)) for e in exps]
        out.append([(e, v) for e, v in forms if any(v)])
    return out


def _classify(m, location):
    per_row = _coefficient_forms(m)
    found = {}
    for choice in product(*[range(len(r)) for r in per_row]):
        zeros = [v for r, k in zip(per_row, choice) for _, v in r[:k]]
        basis = rref_forms(zeros) if zeros else ()
        if len(basis) == 3:
            continue
        nonzero = []
        ok = True
        for r, k in zip(per_row, choice):
            red = reduce_form(r[k][1], basis)
            if not any(red):
                ok = False
                break
            nonzero.append(normalize_form(red))
        if not ok:
            continue
        degs = tuple(r[k][0] for r, k in zip(per_row, choice))
        cls = SymbolicClass(basis, tuple(sorted(set(nonzero))), location(degs), degs)
        found[(basis, degs)] = cls
    return sorted(found.values(), key=SymbolicClass.sort_key)


def classify_line_symbolic(m):
    """Complete piecewise description of line centers under ``m``."""
    return _classify(m, lambda d: TropPoint(d[2] - d[0], d[2] - d[1]))


def classify_point_symbolic(m):
    """Complete piecewise description of point locations under ``m``."""
    return _classify(point_transform(m), lambda d: TropPoint(d[0] - d[2], d[1] - d[2]))


def class_of(classes, v):
    hits = [c for c in classes if c.contains(v)]
    if len(hits) != 1:
        raise AssertionError(f"{v} lies in {len(hits)} classes")
    return hits[0]


@dataclass(frozen=True)
class TableRow:
    coordinate: TropPoint
    points: tuple  # SymbolicClass entries, empty when not special
    lines: tuple

    @property
    def point_special(self):
        return bool(self.points)

    @property
    def line_special(self):
        return bool(self.lines)

    def describe(self):
        pts = " or ".join("{" + c.describe("abc") + "}" for c in self.points) or "NS"
        lns = " or ".join("{" + c.describe("def") + "}" for c in self.lines) or "NS"
        return pts, lns


@dataclass(frozen=True)
class PointLineTable:
    rows: tuple

    def row(self, coord):
        coord = _tp(coord)
        for r in self.rows:
            if r.coordinate == coord:
                return r
        raise KeyError(coord)

    def coordinates(self):
        return [r.coordinate for r in self.rows]

    def line_centers(self):
        return [r.coordinate for r in self.rows if r.line_special]

    def point_locations(self):
        return [r.coordinate for r in self.rows if r.point_special]


def point_line_table(m):
    """Join the point and line classifications on their tropical coordinates.

    Rows run from the most generic coordinate to the most special one:
    point-bearing rows first, then by decreasing class dimension.
    """
    pcs = classify_point_symbolic(m)
    lcs = classify_line_symbolic(m)
    coords = {c.location for c in pcs} | {c.location for c in lcs}
    rows = []
    for xy in coords:
        p = tuple(c for c in pcs if c.location == xy)
        l = tuple(c for c in lcs if c.location == xy)
        rows.append(TableRow(xy, p, l))

    def key(r):
        pdim = max((c.dimension for c in r.points), default=0)
        ldim = max((c.dimension for c in r.lines), default=0)
        return (not r.points, -pdim, -ldim, r.coordinate)

    return PointLineTable(tuple(sorted(rows, key=key)))


# amoeba boundaries (floating point, figures only)

BRANCHES = ("upper", "right", "lower")


def boundary_point(branch, x, base="natural", t=None):
    """``y`` on one boundary branch of the amoeba of ``z1 + z2 + 1 = 0``.

    With ``base="t"`` both axes are measured in ``log_t``.
    """
    scale = 1.0 if base == "natural" else _log_t(t)
    u = x * scale
    if branch == "upper":
        y = math.log1p(math.exp(u)) if u < 700 else u + math.log1p(math.exp(-u))
    elif branch == "right":
        if u <= 0:
            raise DomainError("right branch needs x > 0")
        y = u + math.log(-math.expm1(-u))
    elif branch == "lower":
        if u >= 0:
            raise DomainError("lower branch needs x < 0")
        y = math.log(-math.expm1(u))
    else:
        raise ValueError(f"unknown branch {branch!r}")
    return y / scale


def _log_t(t):
    if t is None:
        raise DomainError("base t needs a t value")
    t = float(as_fraction(t))
    if t <= 1:
        raise DomainError("t must exceed 1")
    return math.log(t)


def amoeba_boundary_samples(kind="line-through-minus-one", base="natural", t=None,
                            x_range=(-4.0, 4.0), count=200, coeffs=(1, 1, 1)):
    """Sample the three boundary curves; returns ``{branch: [(x, y), ...]}``.

    ``kind="scaled"`` uses the line ``a*z1 + b*z2 + c = 0`` from ``coeffs``,
    whose amoeba is the standard one translated by ``(log|c/a|, log|c/b|)``.
    Points outside a branch's domain are skipped.
    """
    if count < 2:
        raise ValueError("count must be at least 2")
    if kind not in ("line-through-minus-one", "scaled"):
        raise ValueError(f"unknown kind {kind!r}")
    if base not in ("natural", "t"):
        raise ValueError(f"unknown base {base!r}")
    scale = 1.0 if base == "natural" else _log_t(t)
    sx = sy = 0.0
    if kind == "scaled":
        a, b, c = (float(as_fraction(v)) for v in coeffs)
        if not (a and b and c):
            raise DomainError("scaled line needs nonzero coefficients")
        sx = math.log(abs(c / a)) / scale
        sy = math.log(abs(c / b)) / scale
    lo, hi = (float(v) for v in x_range)
    xs = [lo + (hi - lo) * i / (count - 1) for i in range(count)]
    out = {}
    for branch in BRANCHES:
        pts = []
        for x in xs:
            try:
                y = boundary_point(branch, x - sx, base, t)
            except DomainError:
                continue
            pts.append((x, y + sy))
        out[branch] = pts
    return out


def samples_to_csv(samples):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["branch", "x", "y"])
    for branch in BRANCHES:
        for x, y in samples.get(branch, []):
            w.writerow([branch, repr(x), repr(y)])
    return buf.getvalue()


# SVG output

PX_PER_UNIT = 40


def render_svg(lines=(), points=(), extent=8, samples=None):
    """Schematic tropical picture.

    ``lines`` and ``points`` are ``(label, (x, y))`` pairs; each line is drawn as
    rays west, south and northeast from its center.  ``samples`` (amoeba
    boundary branches) are drawn as polylines.
    """
    size = 2 * extent * PX_PER_UNIT
    half = size / 2

    def px(x, y):
        return (half + x * PX_PER_UNIT, half - y * PX_PER_UNIT)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
        f'<line x1="0" y1="{half}" x2="{size}" y2="{half}" stroke="#ccc"/>',
        f'<line x1="{half}" y1="0" x2="{half}" y2="{size}" stroke="#ccc"/>',
    ]
    for label, c in lines:
        cx, cy = _tp(c)
        x0, y0 = px(cx, cy)
        reach = 4 * extent
        ends = [px(cx - reach, cy), px(cx, cy - reach), px(cx + reach, cy + reach)]
        for x1, y1 in ends:
            out.append(f'<line x1="{x0:g}" y1="{y0:g}" x2="{x1:g}" y2="{y1:g}" stroke="black"/>')
        out.append(f'<text x="{x0 + 4:g}" y="{y0 - 4:g}" font-size="11" fill="blue">{label}</text>')
    for label, p in points:
        x, y = px(*_tp(p))
        out.append(f'<circle cx="{x:g}" cy="{y:g}" r="4" fill="red"/>')
        out.append(f'<text x="{x + 5:g}" y="{y + 12:g}" font-size="11" fill="red">{label}</text>')
    for branch, pts in (samples or {}).items():
        if pts:
            body = " ".join("{:.3f},{:.3f}".format(*px(x, y)) for x, y in pts if abs(y) <= 2 * extent)
            out.append(f'<polyline points="{body}" fill="none" stroke="green"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


__all__ = [
    "DomainError",
    "PointLineTable",
    "SymbolicClass",
    "TableRow",
    "TropLine",
    "TropPoint",
    "VanishingCoordinateError",
    "amoeba_boundary_samples",
    "boundary_point",
    "centers_through",
    "class_of",
    "classify_line_symbolic",
    "classify_point_symbolic",
    "point_line_table",
    "point_transform",
    "render_svg",
    "samples_to_csv",
    "trop_contains",
    "trop_line_center",
    "trop_point_location",
]
