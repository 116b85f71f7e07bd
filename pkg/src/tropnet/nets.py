"""Abstract and realized (k,d)-nets.

Line ids are ``(class, index)`` pairs and point ids are ``(i, j)`` with
``p_ij`` the meet of lines ``(1, i)`` and ``(2, j)``; everything is 1-based.
Verification reports are lists of ``(condition, ids)`` tuples; an empty
report means every check passed.
"""

import dataclasses
from dataclasses import dataclass
from itertools import combinations

from .latin import LatinSquare, are_orthogonal
from .projective import (
    CoincidentError,
    ProjLine,
    ProjPoint,
    coords_from_json,
    coords_to_json,
    incident,
    meet,
)


class NonOrthogonalError(ValueError):
    pass


class AdmissibilityDomainError(ValueError):
    pass


@dataclass(frozen=True)
class AbstractNet:
    k: int
    d: int
    incidence: dict  # (i, j) -> list of line ids

    def points(self):
        return sorted(self.incidence)

    def lines(self):
        return [(c, i) for c in range(1, self.k + 1) for i in range(1, self.d + 1)]

    def points_on(self, line_id):
        return [p for p in self.points() if line_id in self.incidence[p]]

    def line_of(self, point, cls):
        """The class-``cls`` line through ``point`` (first one if the net is defective)."""
        for c, i in self.incidence[point]:
            if c == cls:
                return (c, i)
        return None

    def to_json(self):
        return {
            "k": self.k,
            "d": self.d,
            "incidence": {
                f"{i},{j}": [list(l) for l in self.incidence[(i, j)]] for i, j in self.points()
            },
        }

    @classmethod
    def from_json(cls, obj):
        inc = {}
        for key, lines in obj["incidence"].items():
            i, j = (int(x) for x in key.split(","))
            inc[(i, j)] = [tuple(l) for l in lines]
        return cls(int(obj["k"]), int(obj["d"]), inc)


def net_from_ols(squares, d=None):
    """Net with classes rows, columns, then one class per square.

    ``d`` is required only when ``squares`` is empty (the grid net).
    """
    squares = [s if isinstance(s, LatinSquare) else LatinSquare(s) for s in squares]
    if squares:
        d = squares[0].order
    elif d is None:
        raise ValueError("order d is required for the grid net")
    for a, b in combinations(squares, 2):
        if a.order != b.order or not are_orthogonal(a, b):
            raise NonOrthogonalError("squares must be pairwise orthogonal of equal order")
    inc = {}
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            ids = [(1, i), (2, j)]
            ids += [(c + 3, s[i - 1, j - 1]) for c, s in enumerate(squares)]
            inc[(i, j)] = ids
    return AbstractNet(2 + len(squares), d, inc)


def verify_abstract_net(net):
    report = []
    k, d = net.k, net.d
    if len(net.incidence) != d * d:
        report.append(("point-count", [len(net.incidence), d * d]))
    for p in net.points():
        for c in range(1, k + 1):
            ids = [l for l in net.incidence[p] if l[0] == c]
            if len(ids) != 1:
                report.append(("unique-line", [p, c, ids]))
        stray = [l for l in net.incidence[p] if not (1 <= l[0] <= k and 1 <= l[1] <= d)]
        if stray:
            report.append(("unknown-line", [p, stray]))
    for l in net.lines():
        n = len(net.points_on(l))
        if n != d:
            report.append(("line-size", [l, n]))
    for l, m in combinations(net.lines(), 2):
        if l[0] == m[0]:
            continue
        common = [p for p in net.points_on(l) if m in net.incidence[p]]
        if len(common) != 1:
            report.append(("cross-meet", [l, m, common]))
    return report


@dataclass(frozen=True)
class RealizedNet:
    net: AbstractNet
    lines: dict  # line id -> ProjLine
    points: dict  # point id -> ProjPoint
    field: str = "rational"
    meta: dict = dataclasses.field(default_factory=dict, compare=False)

    def map(self, fn):
        """Apply a coefficient map (for example a field automorphism) to every coordinate."""
        return RealizedNet(
            self.net,
            {i: l.map(fn) for i, l in self.lines.items()},
            {i: p.map(fn) for i, p in self.points.items()},
            self.field,
        )

    def to_json(self):
        out = self.net.to_json()
        out["field"] = self.field
        out["lines"] = {f"{c},{i}": coords_to_json(self.lines[(c, i)].coords) for c, i in sorted(self.lines)}
        out["points"] = {f"{i},{j}": coords_to_json(self.points[(i, j)].coords) for i, j in sorted(self.points)}
        return out

    @classmethod
    def from_json(cls, obj):
        net = AbstractNet.from_json(obj)

        def ids(key):
            return tuple(int(x) for x in key.split(","))

        lines = {ids(k): ProjLine(coords_from_json(v)) for k, v in obj["lines"].items()}
        points = {ids(k): ProjPoint(coords_from_json(v)) for k, v in obj["points"].items()}
        return cls(net, lines, points, obj.get("field", "rational"))


def verify_realized_net(rn):
    """Exact checks of a coordinatized net.

    Conditions: ``missing`` (uncoordinatized ids), ``incidence`` (declared
    incidence fails), ``extra-incidence`` (a point lies on a line it should
    not), ``duplicate-line`` (equal lines in one class), ``class-disjoint``
    (two lines of one class meet at a net point), ``meet-not-net-point``
    (lines of different classes meet outside the declared point),
    ``duplicate-point``.
    """
    net = rn.net
    report = []
    missing = [l for l in net.lines() if l not in rn.lines]
    missing += [p for p in net.points() if p not in rn.points]
    if missing:
        report.append(("missing", missing))
        return report
    for p in net.points():
        pt = rn.points[p]
        declared = set(net.incidence[p])
        for l in net.lines():
            on = incident(pt, rn.lines[l])
            if l in declared and not on:
                report.append(("incidence", [p, l]))
            elif l not in declared and on:
                report.append(("extra-incidence", [p, l]))
    for a, b in combinations(net.points(), 2):
        if rn.points[a].same_as(rn.points[b]):
            report.append(("duplicate-point", [a, b]))
    for l, m in combinations(net.lines(), 2):
        L, M = rn.lines[l], rn.lines[m]
        if L.same_as(M):
            if l[0] == m[0]:
                report.append(("duplicate-line", [l, m]))
            else:
                report.append(("meet-not-net-point", [l, m, None]))
            continue
        x = meet(L, M)
        at = [p for p in net.points() if x.same_as(rn.points[p])]
        if l[0] == m[0]:
            if at:
                report.append(("class-disjoint", [l, m, at]))
        else:
            expected = [p for p in net.points_on(l) if m in net.incidence[p]]
            if at != expected or len(at) != 1:
                report.append(("meet-not-net-point", [l, m, at]))
    return report


def realize_from_lines(net, lines, field="rational"):
    """Coordinatize points as meets of their class-1 and class-2 lines."""
    points = {}
    for p in net.points():
        try:
            points[p] = meet(lines[net.line_of(p, 1)], lines[net.line_of(p, 2)])
        except CoincidentError as exc:
            raise ValueError(f"point {p} undefined: {exc}") from exc
    return RealizedNet(net, dict(lines), points, field)


def yuzvinsky_admissible(k, d):
    """Whether a (k,d)-net in the complex plane is allowed by the known bounds."""
    if k < 3 or d < 2:
        raise AdmissibilityDomainError("defined only for k >= 3 and d >= 2")
    return (k == 3 and d >= 2) or (k == 4 and d >= 3) or (k == 5 and d >= 6)


__all__ = [
    "AbstractNet",
    "AdmissibilityDomainError",
    "NonOrthogonalError",
    "RealizedNet",
    "net_from_ols",
    "realize_from_lines",
    "verify_abstract_net",
    "verify_realized_net",
    "yuzvinsky_admissible",
]
