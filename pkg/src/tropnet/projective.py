"""Points and lines of the projective plane over exact coefficient rings.

Supported rings: rationals (ints/Fractions), ``UniPoly`` in t, ``MultiPoly``
in net parameters, and :class:`QuotientElem` for Q[k]/(k^2 - k + 1).
A point ``(a:b:c)`` lies on the line ``[d:e:f]`` iff ``a*d + b*e + c*f == 0``.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .algebra.groebner import solve_linear
from .algebra.mat3 import Mat3
from .algebra.multipoly import MultiPoly
from .algebra.rational import as_fraction, format_rational, is_scalar, parse_rational
from .algebra.serialize import (
    multipoly_from_json,
    multipoly_to_json,
    unipoly_from_json,
    unipoly_to_json,
)
from .algebra.unipoly import UniPoly


class CoincidentError(ValueError):
    """Meet of equal lines or join of equal points."""


class DegenerateConfigurationError(ValueError):
    """Three of the four quadrilateral lines are concurrent."""


class QuotientElem:
    """Element ``a + b*k`` of Q[k]/(k^2 - k + 1), a quadratic field.

    ``k`` is a primitive sixth root of unity; the nontrivial automorphism is
    ``k -> 1 - k`` (complex conjugation).
    """

    __slots__ = ("a", "b")
    var = "k2"

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "a", as_fraction(a))
        object.__setattr__(self, "b", as_fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("QuotientElem is immutable")

    @classmethod
    def k(cls):
        return cls(0, 1)

    @classmethod
    def coerce(cls, x):
        if isinstance(x, QuotientElem):
            return x
        if is_scalar(x):
            return cls(x, 0)
        raise TypeError(f"cannot coerce {x!r} to QuotientElem")

    def __eq__(self, other):
        if isinstance(other, QuotientElem):
            return self.a == other.a and self.b == other.b
        if is_scalar(other):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self):
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __neg__(self):
        return QuotientElem(-self.a, -self.b)

    def __add__(self, other):
        try:
            o = QuotientElem.coerce(other)
        except TypeError:
            return NotImplemented
        return QuotientElem(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = QuotientElem.coerce(other)
        except TypeError:
            return NotImplemented
        return QuotientElem(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        return QuotientElem.coerce(other) - self

    def __mul__(self, other):
        try:
            o = QuotientElem.coerce(other)
        except TypeError:
            return NotImplemented
        # k^2 = k - 1
        a, b, c, d = self.a, self.b, o.a, o.b
        return QuotientElem(a * c - b * d, a * d + b * c + b * d)

    __rmul__ = __mul__

    def norm(self):
        return self.a * self.a + self.a * self.b + self.b * self.b

    def conjugate(self):
        return QuotientElem(self.a + self.b, -self.b)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q[k]/(k^2-k+1)")
        c = self.conjugate()
        return QuotientElem(c.a / n, c.b / n)

    def __truediv__(self, other):
        try:
            o = QuotientElem.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return QuotientElem.coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        out = QuotientElem(1)
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self):
        return f"QuotientElem({self.a}, {self.b})"

    def __str__(self):
        if not self.b:
            return str(self.a)
        kb = self.var if self.b == 1 else (f"-{self.var}" if self.b == -1 else f"{self.b}*{self.var}")
        if not self.a:
            return kb
        if self.b < 0:
            return f"{self.a} - {kb.lstrip('-')}"
        return f"{self.a} + {kb}"


# ring detection and canonical representatives

RING_TAGS = ("rational", "unipoly-t", "multipoly", "quotient-k2")


def ring_of(coords):
    kinds = set()
    for x in coords:
        if isinstance(x, QuotientElem):
            kinds.add("quotient-k2")
        elif isinstance(x, MultiPoly):
            kinds.add("multipoly")
        elif isinstance(x, UniPoly):
            kinds.add("unipoly-t")
        elif is_scalar(x):
            continue
        else:
            raise TypeError(f"unsupported coordinate {x!r}")
    if not kinds:
        return "rational"
    if len(kinds) > 1:
        raise TypeError(f"mixed coordinate rings {sorted(kinds)}")
    return kinds.pop()


def _coerce_all(coords, ring):
    if ring == "rational":
        return tuple(as_fraction(x) for x in coords)
    if ring == "quotient-k2":
        return tuple(QuotientElem.coerce(x) for x in coords)
    if ring == "unipoly-t":
        return tuple(UniPoly.coerce(x) for x in coords)
    vars = next(x.vars for x in coords if isinstance(x, MultiPoly))
    return tuple(x if isinstance(x, MultiPoly) else MultiPoly.const(x, vars) for x in coords)


def _is_zero(x):
    return not x


def canonical_coords(coords):
    """Canonical representative of a homogeneous triple.

    Over fields, divide by the first nonzero coordinate.  Over polynomial
    rings, clear the rational content and make the leading coefficient of the
    first nonzero coordinate positive.
    """
    coords = tuple(coords)
    if len(coords) != 3:
        raise ValueError("homogeneous coordinates need exactly 3 entries")
    ring = ring_of(coords)
    coords = _coerce_all(coords, ring)
    first = next((x for x in coords if not _is_zero(x)), None)
    if first is None:
        raise ValueError("all-zero homogeneous coordinates")
    if ring in ("rational", "quotient-k2"):
        return tuple(x / first for x in coords)
    coeffs = [c for x in coords for c in x.terms.values()]
    den = 1
    for c in coeffs:
        den = lcm(den, c.denominator)
    num = 0
    for c in coeffs:
        num = gcd(num, (c * den).numerator)
    s = Fraction(den, num)
    if first.leading_coeff < 0:
        s = -s
    return tuple(x * s for x in coords)


def cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u, v):
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def det3(u, v, w):
    return dot(cross(u, v), w)


@dataclass(frozen=True, eq=False)
class _Homogeneous:
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", canonical_coords(self.coords))

    @property
    def ring(self):
        return ring_of(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __len__(self):
        return 3

    def __eq__(self, other):
        return type(other) is type(self) and self.coords == other.coords

    def __hash__(self):
        return hash((type(self).__name__, self.coords))

    def same_as(self, other):
        """Projective equality (proportional triples), valid for every ring."""
        return all(_is_zero(c) for c in cross(self.coords, tuple(other)))

    def map(self, fn):
        return type(self)(tuple(fn(x) for x in self.coords))

    def to_json(self):
        return coords_to_json(self.coords)

    @classmethod
    def from_json(cls, obj):
        return cls(coords_from_json(obj))


class ProjPoint(_Homogeneous):
    def __repr__(self):
        return "(" + ":".join(str(x) for x in self.coords) + ")"


class ProjLine(_Homogeneous):
    def __repr__(self):
        return "[" + ":".join(str(x) for x in self.coords) + "]"


def incident(p, l):
    return _is_zero(dot(tuple(p), tuple(l)))


def meet(l1, l2):
    c = cross(tuple(l1), tuple(l2))
    if all(_is_zero(x) for x in c):
        raise CoincidentError(f"lines {l1} and {l2} coincide")
    return ProjPoint(c)


def join(p1, p2):
    c = cross(tuple(p1), tuple(p2))
    if all(_is_zero(x) for x in c):
        raise CoincidentError(f"points {p1} and {p2} coincide")
    return ProjLine(c)


# standard frame

STANDARD_QUADRILATERAL = (
    ProjLine((0, 0, 1)),  # z = 0
    ProjLine((1, 1, 1)),  # x + y + z = 0
    ProjLine((1, 0, 0)),  # x = 0
    ProjLine((0, 1, 0)),  # y = 0
)


def _inverse3(rows):
    cols = list(zip(*rows))
    det = det3(*[tuple(r) for r in rows])
    if det == 0:
        raise ZeroDivisionError("singular matrix")
    # inverse = adj / det, adj rows are cross products of columns
    c0, c1, c2 = cols
    adj_rows = [cross(c1, c2), cross(c2, c0), cross(c0, c1)]
    return [[x / det for x in r] for r in adj_rows]


def standardize_quadrilateral(l11, l12, l21, l22):
    """Matrix ``A`` of the dual map sending the four lines to the standard frame.

    ``A @ l11 ~ [0:0:1]``, ``A @ l12 ~ [1:1:1]``, ``A @ l21 ~ [1:0:0]``,
    ``A @ l22 ~ [0:1:0]``.  Entries are rationals (constant polynomials).
    """
    lines = [tuple(as_fraction(x) for x in l) for l in (l11, l12, l21, l22)]
    for a, b, c in ((0, 2, 3), (0, 1, 2), (0, 1, 3), (1, 2, 3)):
        if det3(lines[a], lines[b], lines[c]) == 0:
            raise DegenerateConfigurationError("three of the four lines are concurrent")
    a11, a12, a21, a22 = lines
    basis = [a21, a22, a11]  # images of e1, e2, e3
    rows = [[basis[j][i] for j in range(3)] for i in range(3)]
    lam = solve_linear([r + [a12[i]] for i, r in enumerate(rows)], 3)
    b = [[rows[i][j] * lam[j] for j in range(3)] for i in range(3)]
    return Mat3(_inverse3(b))


def apply_rational_matrix(m, vec):
    """Apply a constant :class:`Mat3` to a rational triple."""
    out = m.apply(tuple(as_fraction(x) for x in vec))
    return tuple(x.coeff(0) for x in out)


# pencils

def _linear_form(line):
    x, y, z = line
    return {(1, 0, 0): x, (0, 1, 0): y, (0, 0, 1): z}


def _form_mul(f, g):
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return out


def class_form(lines):
    """Product of the linear forms of a class, as ``{(i, j, k): coeff}``."""
    form = {(0, 0, 0): 1}
    for l in lines:
        form = _form_mul(form, _linear_form(tuple(l)))
    return form


def pencil_member(class_a, class_b, class_c):
    """``(lam, mu)`` with ``C ~ lam*A + mu*B``, or ``None`` if C is not in the pencil."""
    fa, fb, fc = class_form(class_a), class_form(class_b), class_form(class_c)
    degs = {sum(e) for f in (fa, fb, fc) for e in f}
    if len(degs) > 1:
        raise ValueError("classes must have the same number of lines")
    d = degs.pop()
    monos = sorted(e for e in product(range(d + 1), repeat=3) if sum(e) == d)
    rows = [[fa.get(e, 0), fb.get(e, 0), fc.get(e, 0)] for e in monos]
    sol = solve_linear(rows, 2)
    if sol is None:
        return None
    lam, mu = sol
    if _is_zero(lam) and _is_zero(mu):
        return None
    first = lam if not _is_zero(lam) else mu
    return (lam / first, mu / first)


# JSON encodings

def element_to_json(x, ring):
    if ring == "rational":
        return format_rational(x)
    if ring == "unipoly-t":
        return unipoly_to_json(UniPoly.coerce(x))
    if ring == "multipoly":
        return multipoly_to_json(x)
    if ring == "quotient-k2":
        x = QuotientElem.coerce(x)
        return [format_rational(x.a), format_rational(x.b)]
    raise ValueError(f"unknown ring {ring!r}")


def element_from_json(obj, ring, vars=None):
    if ring == "rational":
        return parse_rational(obj)
    if ring == "unipoly-t":
        return unipoly_from_json(obj)
    if ring == "multipoly":
        return multipoly_from_json(obj, vars)
    if ring == "quotient-k2":
        return QuotientElem(parse_rational(obj[0]), parse_rational(obj[1]))
    raise ValueError(f"unknown ring {ring!r}")


def coords_to_json(coords):
    ring = ring_of(coords)
    coords = _coerce_all(coords, ring)
    out = {"ring": ring}
    if ring == "multipoly":
        out["vars"] = list(coords[0].vars)
    out["coords"] = [element_to_json(x, ring) for x in coords]
    return out


def coords_from_json(obj):
    ring = obj["ring"]
    vars = obj.get("vars")
    return tuple(element_from_json(x, ring, vars) for x in obj["coords"])
