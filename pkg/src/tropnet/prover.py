"""Constraint generation and certificates for the (4,4) and (4,3) nets.

Pipeline: place the standard quadrilateral, close under meets and joins,
use the point-line table of the degeneration matrix to turn tropical
incidences into one-parameter families, coordinatize everything over the
parameter ring, and decide the resulting incidence equations exactly.
"""

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .algebra.groebner import (
    DEFAULT_STEP_BUDGET,
    Completion,
    Derivation,
    IdealBasis,
    Step,
    ideal_contains_one,
    minimal_polynomial,
    saturated_generators,
    solve_linear,
)
from .algebra.mat3 import degeneration_T
from .algebra.multipoly import MultiPoly
from .algebra.rational import as_fraction, format_rational
from .algebra.serialize import multipoly_from_json, multipoly_to_json
from .latin import PAIR_ORDER_3, PAIR_ORDER_4
from .nets import RealizedNet, net_from_ols, verify_realized_net
from .projective import (
    STANDARD_QUADRILATERAL,
    CoincidentError,
    ProjLine,
    ProjPoint,
    QuotientElem,
    det3,
    dot,
    join,
    meet,
)
from .tropical import (
    centers_through,
    classify_line_symbolic,
    classify_point_symbolic,
    kernel_vector,
    point_line_table,
    reduce_form,
    rref_forms,
    trop_contains,
    trop_line_center,
    trop_point_location,
)

SCHEMA_VERSION = 1


class InconsistencyError(ValueError):
    """Tropical filtering or fixed incidences leave no possible configuration."""


class InconclusiveError(RuntimeError):
    """The step budget ran out before a decision was reached."""


def line_name(lid):
    return f"l{lid[0]}{lid[1]}"


def point_name(pid):
    return f"p{pid[0]}{pid[1]}"


# parameter names keyed by the tropical coordinate of the family
LINE_PARAMS = {(-2, -1): "k1", (3, 2): "k2", (1, 3): "k3"}
POINT_PARAMS = {(0, 2): "m", (1, 0): "t", (2, 3): "s"}
_GROUPS = "kmst"


def _param_sort_key(name):
    g = _GROUPS.index(name[0]) if name[0] in _GROUPS else len(_GROUPS)
    return (g, name)


@dataclass
class Family:
    """Members ``base + param * direction`` of one symbolic class.

    ``exclusions`` are parameter values leaving the class, ``placed`` values
    that give an item already placed, and ``lost`` the class member missed by
    the chart (the limit ``param -> infinity``), if any.
    """

    kind: str  # "line" or "point"
    item: tuple
    location: tuple
    param: str
    base: tuple
    direction: tuple
    exclusions: tuple = ()
    placed: tuple = ()
    lost: tuple | None = None
    source: str = ""

    def coords(self, vars):
        k = MultiPoly.var(self.param, vars)
        return tuple(MultiPoly.const(b, vars) + k * d for b, d in zip(self.base, self.direction))

    def shape(self):
        """Human readable coordinates such as ``[1:0:k1]``."""
        parts = []
        for b, d in zip(self.base, self.direction):
            if d == 0:
                parts.append(format_scalar(b))
            else:
                v = MultiPoly.var(self.param, (self.param,))
                parts.append(str(MultiPoly.const(b, (self.param,)) + v * d))
        o, c = ("[", "]") if self.kind == "line" else ("(", ")")
        return o + ":".join(parts) + c


def format_scalar(x):
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else str(x)


@dataclass
class NetSkeleton:
    net: object
    matrix: object
    fixed_lines: dict
    fixed_points: dict
    line_families: dict
    point_families: dict
    provenance: dict
    params: tuple

    def families(self):
        return list(self.line_families.values()) + list(self.point_families.values())

    def nonvanishing(self, tiers=("family", "distinct")):
        """``(poly, reason)`` side conditions of the requested tiers."""
        vars = self.params
        out = []
        fams = self.families()
        if "family" in tiers:
            for f in fams:
                k = MultiPoly.var(f.param, vars)
                for r in f.exclusions:
                    out.append((k - r, f"{f.param} != {format_scalar(r)} (stays in class)"))
        if "distinct" in tiers:
            for f in fams:
                k = MultiPoly.var(f.param, vars)
                for r, who in f.placed:
                    out.append((k - r, f"{f.param} != {format_scalar(r)} (would equal {who})"))
            for f, g in combinations(fams, 2):
                if f.kind == g.kind and f.location == g.location and f.base == g.base and f.direction == g.direction:
                    out.append((MultiPoly.var(f.param, vars) - MultiPoly.var(g.param, vars),
                                f"{f.param} != {g.param} (distinct items)"))
        return out


def _fixed_closure(net, lines, points, provenance):
    changed = True
    while changed:
        changed = False
        for pid in net.points():
            if pid in points:
                continue
            known = [l for l in net.incidence[pid] if l in lines]
            if len(known) >= 2:
                a, b = known[:2]
                points[pid] = meet(lines[a], lines[b])
                provenance[point_name(pid)] = f"meet of {line_name(a)} and {line_name(b)}"
                changed = True
        for lid in net.lines():
            if lid in lines:
                continue
            known = [p for p in net.points_on(lid) if p in points]
            if len(known) >= 2:
                a, b = known[:2]
                lines[lid] = join(points[a], points[b])
                provenance[line_name(lid)] = f"join of {point_name(a)} and {point_name(b)}"
                changed = True
    for pid, p in points.items():
        for lid, l in lines.items():
            on = dot(p.coords, l.coords) == 0
            if on != (lid in net.incidence[pid]):
                raise InconsistencyError(f"fixed {point_name(pid)} and {line_name(lid)} violate the incidence table")


def _chart(zero, cls, incidence_ok):
    """Best one-parameter chart of a projective line of coordinates.

    Returns ``(base, direction, lost)`` or ``None`` when the set is not a line.
    Among coordinates that do not vanish identically, normalize the one that
    keeps the parameter in the fewest slots (first one on ties).
    """
    best = None
    for i in range(3):
        e_i = tuple(Fraction(int(k == i)) for k in range(3))
        if not any(reduce_form(e_i, zero)):
            continue
        w = kernel_vector(rref_forms(list(zero) + [e_i]))
        j = next(k for k in range(3) if k != i and w[k] != 0)
        w = tuple(x / w[j] for x in w)
        e_j = tuple(Fraction(int(k == j)) for k in range(3))
        u = kernel_vector(rref_forms(list(zero) + [e_j]))
        u = tuple(x / u[i] for x in u)
        score = (sum(1 for x in w if x != 0), i)
        if best is None or score < best[0]:
            best = (score, u, w)
    if best is None:
        return None
    _, u, w = best
    lost = w if cls.contains(w) and incidence_ok(w) else None
    return u, w, lost


def _family_for(cls, through, placed_same_kind):
    """Restrict ``cls`` by incidences with fixed items and parametrize it.

    Returns ``("fixed", coords)``, ``("family", base, direction, lost, exclusions, placed)``
    or ``None`` when the restriction is empty.
    """
    forms = list(cls.zero_forms) + [tuple(as_fraction(x) for x in t) for t in through]
    zero = rref_forms(forms)
    if len(zero) == 3:
        return None
    nonzero = []
    for n in cls.nonzero_forms:
        r = reduce_form(n, zero)
        if not any(r):
            return None
        nonzero.append(n)
    if len(zero) == 2:
        return ("fixed", kernel_vector(zero))
    if len(zero) < 1:
        return ("free",)

    def incidence_ok(v):
        return all(sum(a * b for a, b in zip(f, v)) == 0 for f in forms)

    u, w, lost = _chart(zero, cls, incidence_ok)
    excl = []
    for n in nonzero:
        a = sum(x * y for x, y in zip(n, u))
        b = sum(x * y for x, y in zip(n, w))
        if b != 0:
            r = -a / b
            if r not in excl:
                excl.append(r)
    placed = []
    for who, x in placed_same_kind:
        x = tuple(as_fraction(v) for v in x)
        if not incidence_ok(x) or not cls.contains(x):
            continue
        i = next(k for k in range(3) if u[k] == 1 and w[k] == 0)
        j = next(k for k in range(3) if w[k] == 1 and u[k] == 0)
        if x[i] == 0:
            if lost is not None and all(a * w[j] == b * x[j] for a, b in zip(x, w)):
                lost = None  # the lost member is an item already placed
            continue
        placed.append((x[j] / x[i], who))
    return ("family", u, w, lost, tuple(sorted(excl)), tuple(placed))


def build_skeleton(net, matrix=None):
    """Fixed items and tropical families for an abstract 4-net."""
    m = matrix if matrix is not None else degeneration_T()
    l11, l12, l21, l22 = STANDARD_QUADRILATERAL
    lines = {(1, 1): l11, (1, 2): l12, (2, 1): l21, (2, 2): l22}
    points = {}
    prov = {line_name(k): "standard quadrilateral" for k in lines}
    _fixed_closure(net, lines, points, prov)

    table = point_line_table(m)
    lcls = classify_line_symbolic(m)
    pcls = classify_point_symbolic(m)
    line_loc = {lid: trop_line_center(l.coords, m) for lid, l in lines.items()}
    point_loc = {pid: trop_point_location(p.coords, m) for pid, p in points.items()}

    line_fams = {}
    point_fams = {}
    counters = {}

    def fresh(kind, loc):
        key = (loc.x, loc.y)
        if kind == "line":
            base = LINE_PARAMS.get(key)
            if base is not None:
                n = counters.get(("line", key), 0) + 1
                counters[("line", key)] = n
                return base if n == 1 else f"{base}_{n}"
            n = counters.get("u", 0) + 1
            counters["u"] = n
            return f"u{n}"
        base = POINT_PARAMS.get(key)
        if base is None:
            n = counters.get("v", 0) + 1
            counters["v"] = n
            return f"v{n}"
        n = counters.get(("point", key), 0) + 1
        counters[("point", key)] = n
        return f"{base}{n}"

    def resolve(kind, item, through_ids, candidates, classes, placed):
        """Single surviving coordinate for ``item`` or ``None``."""
        survivors = []
        for c in candidates:
            opts = []
            for cls in (x for x in classes if x.location == c):
                through = [(lines if kind == "point" else points)[t].coords for t in through_ids]
                res = _family_for(cls, through, placed)
                if res is None:
                    continue
                if res[0] == "fixed" and cls.unique:
                    v = ProjLine(res[1]) if kind == "line" else ProjPoint(res[1])
                    if any(v == (ProjLine(x) if kind == "line" else ProjPoint(x)) for _, x in placed):
                        continue  # the only preimage is an item already placed
                opts.append((cls, res))
            if opts:
                survivors.append((c, opts))
        return survivors

    # lines through fixed points, then points on fixed lines
    for kind in ("line", "point"):
        if kind == "line":
            todo = [lid for lid in net.lines() if lid not in lines]
            classes, cands = lcls, table.line_centers()
        else:
            todo = [pid for pid in net.points() if pid not in points]
            classes, cands = pcls, table.point_locations()
        for item in todo:
            if kind == "line":
                through = [p for p in net.points_on(item) if p in points]
                locs = [point_loc[p] for p in through]
                placed = [(line_name(k), v.coords) for k, v in lines.items()]
            else:
                through = [l for l in net.incidence[item] if l in lines]
                locs = [line_loc[l] for l in through]
                placed = [(point_name(k), v.coords) for k, v in points.items()]
            if not through:
                continue
            if kind == "line":
                cand = list(cands)
                for q in locs:
                    cand = centers_through(q, cand)
            else:
                cand = [c for c in cands if all(trop_contains(q, c) for q in locs)]
            survivors = resolve(kind, item, through, cand, classes, placed)
            if not survivors:
                raise InconsistencyError(f"no tropical position left for {kind} {item}")
            if len(survivors) != 1 or len(survivors[0][1]) != 1:
                continue
            loc, [(cls, res)] = survivors[0]
            names = [point_name(t) if kind == "line" else line_name(t) for t in through]
            src = f"center {tuple(loc)} is the only option through {', '.join(names)}"
            if res[0] == "fixed":
                continue  # fixed by the table alone; the meet/join closure will find it too
            if res[0] != "family":
                continue
            _, u, w, lost, excl, plc = res
            fam = Family(kind, item, (loc.x, loc.y), fresh(kind, loc), u, w, excl, plc, lost, src)
            (line_fams if kind == "line" else point_fams)[item] = fam
            label = line_name(item) if kind == "line" else point_name(item)
            prov[label] = f"family {fam.shape()}; {src}"

    params = tuple(sorted((f.param for f in list(line_fams.values()) + list(point_fams.values())),
                          key=_param_sort_key))
    return NetSkeleton(net, m, lines, points, line_fams, point_fams, prov, params)


def build_44_skeleton():
    return build_skeleton(net_from_ols([PAIR_ORDER_4.first, PAIR_ORDER_4.second]))


def build_43_skeleton():
    return build_skeleton(net_from_ols([PAIR_ORDER_3.first, PAIR_ORDER_3.second]))


# constraint systems

@dataclass
class ConstraintSystem:
    skeleton: NetSkeleton
    vars: tuple
    lines: dict  # id -> ProjLine over MultiPoly
    points: dict
    equations: list
    tags: list
    nonvanishing: list  # (poly, reason, tier)
    construction: dict  # item label -> how it was obtained
    unused_params: tuple = ()
    overrides: dict = field(default_factory=dict)

    def find(self, poly):
        """Index of an equation equal to ``poly`` up to a nonzero scalar, or ``None``."""
        key = _prim(poly.extend(self.vars) if poly.vars != self.vars else poly)
        for i, e in enumerate(self.equations):
            if _prim(e) == key:
                return i
        return None

    def hypotheses(self, tiers):
        return [(p, r) for p, r, t in self.nonvanishing if t in tiers]

    def item_count(self):
        return len(self.lines) + len(self.points)


def _prim(p):
    return p.primitive()[1]


def _complexity(obj):
    return (sum(max(c.total_degree, 0) for c in obj.coords), sum(len(c.terms) for c in obj.coords))


def _lift(coords, vars):
    return tuple(c if isinstance(c, MultiPoly) else MultiPoly.const(c, vars) for c in coords)


def generate_constraints(skeleton, net=None, overrides=None):
    """Coordinatize every item and emit the incidence equations.

    Points come from meets of two known lines when possible, otherwise from
    their family; lines then come from joins of known points, choosing the
    simplest pair.  Equations are the nonzero dot products of every declared
    incidence plus collinearity and concurrency determinants of known
    triples (each is a dot product with an unnormalized join or meet).
    ``overrides`` maps item labels to fixed rational coordinates (branches).
    """
    net = net or skeleton.net
    overrides = dict(overrides or {})
    vars = skeleton.params or ("k",)
    lines = {k: ProjLine(_lift(v.coords, vars)) for k, v in skeleton.fixed_lines.items()}
    points = {k: ProjPoint(_lift(v.coords, vars)) for k, v in skeleton.fixed_points.items()}
    how = {}
    for k in lines:
        how[line_name(k)] = "fixed"
    for k in points:
        how[point_name(k)] = "fixed"
    for lid, fam in skeleton.line_families.items():
        if line_name(lid) in overrides:
            lines[lid] = ProjLine(_lift(overrides[line_name(lid)], vars))
            how[line_name(lid)] = "branch"
        else:
            lines[lid] = ProjLine(fam.coords(vars))
            how[line_name(lid)] = f"family {fam.param}"

    while len(lines) < len(net.lines()) or len(points) < len(net.points()):
        progress = False
        for pid in net.points():
            if pid in points:
                continue
            known = [l for l in net.incidence[pid] if l in lines]
            pairs = []
            for a, b in combinations(known, 2):
                try:
                    x = meet(lines[a], lines[b])
                except CoincidentError:
                    continue
                pairs.append((_complexity(x), a, b, x))
            label = point_name(pid)
            if label in overrides:
                points[pid] = ProjPoint(_lift(overrides[label], vars))
                how[label] = "branch"
            elif pairs:
                _, a, b, x = min(pairs, key=lambda t: (t[0], t[1], t[2]))
                points[pid] = x
                how[label] = f"meet of {line_name(a)} and {line_name(b)}"
            elif pid in skeleton.point_families:
                fam = skeleton.point_families[pid]
                points[pid] = ProjPoint(fam.coords(vars))
                how[label] = f"family {fam.param}"
            else:
                continue
            progress = True
        for lid in net.lines():
            if lid in lines:
                continue
            known = [p for p in net.points_on(lid) if p in points]
            pairs = []
            for a, b in combinations(known, 2):
                try:
                    x = join(points[a], points[b])
                except CoincidentError:
                    continue
                pairs.append((_complexity(x), a, b, x))
            if pairs:
                _, a, b, x = min(pairs, key=lambda t: (t[0], t[1], t[2]))
                lines[lid] = x
                how[line_name(lid)] = f"join of {point_name(a)} and {point_name(b)}"
                progress = True
        if not progress:
            raise InconsistencyError("some items cannot be coordinatized")

    equations, tags, seen = [], [], set()

    def emit(poly, tag):
        if poly.is_zero():
            return
        key = _prim(poly)
        if key in seen:
            return
        seen.add(key)
        equations.append(poly)
        tags.append(tag)

    for pid in net.points():
        for lid in net.incidence[pid]:
            emit(dot(points[pid].coords, lines[lid].coords), f"{point_name(pid)} on {line_name(lid)}")
    for lid in net.lines():
        on = net.points_on(lid)
        for a, b, c in combinations(on, 3):
            emit(det3(points[a].coords, points[b].coords, points[c].coords),
                 f"{point_name(c)} on {line_name(lid)} through {point_name(a)}, {point_name(b)}")
    for pid in net.points():
        through = net.incidence[pid]
        for a, b, c in combinations(through, 3):
            emit(det3(lines[a].coords, lines[b].coords, lines[c].coords),
                 f"{line_name(c)} through {point_name(pid)} at {line_name(a)} x {line_name(b)}")

    # parameters of families that ended up determined by meets are dropped
    used = set()
    for obj in list(lines.values()) + list(points.values()):
        for c in obj.coords:
            used.update(c.used_vars())
    kept = tuple(v for v in vars if v in used) or vars[:1]
    unused = tuple(v for v in skeleton.params if v not in kept)

    def cut(p):
        return p.restrict(kept)

    lines = {k: ProjLine(tuple(cut(c) for c in v.coords)) for k, v in lines.items()}
    points = {k: ProjPoint(tuple(cut(c) for c in v.coords)) for k, v in points.items()}
    equations = [cut(e) for e in equations]

    nonv = []
    fam_hyps = skeleton.nonvanishing(("family",))
    dist_hyps = [h for h in skeleton.nonvanishing(("family", "distinct")) if h not in fam_hyps]
    for hyps, tier in ((fam_hyps, "family"), (dist_hyps, "distinct")):
        for p, r in hyps:
            if set(p.used_vars()) <= set(kept):
                nonv.append((cut(p), r, tier))
    return ConstraintSystem(skeleton, kept, lines, points, equations, tags, nonv, how, unused, overrides)


# certificates

@dataclass
class Certificate:
    kind: str  # "nonexistence" or "uniqueness"
    vars: tuple
    generators: list
    hypotheses: list  # (poly, reason) whose inverses were adjoined
    steps: list
    witness: object  # member index (nonexistence) or dict (uniqueness)
    landmarks: dict = field(default_factory=dict)  # name -> member index
    branches: list = field(default_factory=list)
    direct: "Certificate | None" = None
    info: dict = field(default_factory=dict)

    def derivation(self):
        return Derivation(self.generators, list(self.steps))

    def member(self, i):
        return self.derivation().member(i)

    def to_json(self):
        out = {
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            "parameters": list(self.vars),
            "hypotheses": [{"poly": multipoly_to_json(p), "text": str(p), "reason": r}
                           for p, r in self.hypotheses],
            "generators": [multipoly_to_json(g) for g in self.generators],
            "steps": [
                {
                    "target": multipoly_to_json(s.target),
                    "cofactors": [[i, multipoly_to_json(q)] for i, q in s.cofactors],
                    "note": s.note,
                }
                for s in self.steps
            ],
            "witness": self._witness_json(),
            "landmarks": {k: self.landmarks[k] for k in self.landmarks},
            "branches": [_branch_json(b) for b in self.branches],
            "direct": self.direct.to_json() if self.direct is not None else None,
            "info": self.info,
        }
        return out

    def _witness_json(self):
        if self.kind == "nonexistence":
            return {"member": self.witness, "value": format_rational(self.member(self.witness).constant_value())}
        w = self.witness
        return {
            "variable": w["variable"],
            "minimal_polynomial": w["minimal_polynomial"],
            "member": w["member"],
            "solved": {k: v for k, v in w["solved"].items()},
        }

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=False) + "\n"

    @classmethod
    def from_json(cls, obj):
        if obj.get("schema_version") != SCHEMA_VERSION:
            raise ValueError("unsupported certificate schema version")
        vars = tuple(obj["parameters"])
        gens = [multipoly_from_json(g, vars) for g in obj["generators"]]
        steps = [
            Step(multipoly_from_json(s["target"], vars),
                 tuple((int(i), multipoly_from_json(q, vars)) for i, q in s["cofactors"]),
                 s.get("note", ""))
            for s in obj["steps"]
        ]
        base_vars = tuple(v for v in vars if not _is_inverse_var(v, obj))
        hyps = [(multipoly_from_json(h["poly"], base_vars), h["reason"]) for h in obj["hypotheses"]]
        w = obj["witness"]
        witness = w["member"] if obj["kind"] == "nonexistence" else dict(w)
        branches = [_branch_from_json(b) for b in obj.get("branches", [])]
        direct = cls.from_json(obj["direct"]) if obj.get("direct") else None
        return cls(obj["kind"], vars, gens, hyps, steps, witness, dict(obj.get("landmarks", {})),
                   branches, direct, dict(obj.get("info", {})))


def _is_inverse_var(v, obj):
    return v in obj.get("info", {}).get("inverse_vars", [])


def _branch_json(b):
    out = {"item": b["item"], "value": [format_rational(x) for x in b["value"]], "refuted_by": b["refuted_by"]}
    if b.get("certificate") is not None:
        out["certificate"] = b["certificate"].to_json()
    return out


def _branch_from_json(obj):
    out = {
        "item": obj["item"],
        "value": tuple(Fraction(x) for x in obj["value"]),
        "refuted_by": obj["refuted_by"],
    }
    if "certificate" in obj:
        out["certificate"] = Certificate.from_json(obj["certificate"])
    return out


@dataclass
class VerifyResult:
    accepted: bool
    failed_step: int | None = None
    reason: str = ""
    items_checked: int = 0

    def __bool__(self):
        return self.accepted


def _saturate(sys, hyps):
    """Generator list of ``sys`` plus ``q*y - 1`` for each hypothesis."""
    basis = IdealBasis(tuple(sys.equations), tuple(p for p, _ in hyps))
    vars, inv, gens = saturated_generators(basis)
    return vars, inv, gens


# (4,4): nonexistence

def _landmark_plan():
    """Intermediate polynomials of the classical elimination, with hint sources.

    Hints are either equations of the system (given as text, matched up to a
    scalar) or earlier landmark names.
    """
    return [
        ("k2^2-k2+1", "k2^2 - k2 + 1", ["k1*k2 + k3 - 1", "k1*k2 + k2*k3 - k1 - k2"]),
        ("m1*k2-k2+1", "m1*k2 - k2 + 1", ["k2 + m1*k3 - 1", "k2 + m1 - k1*k2 + k1 - 1", "k1*k2 + k3 - 1"]),
        ("t2-k2+1", "t2 - k2 + 1", ["k1*k2 + k3 - 1", "k3 - 1 + t2*k1 + k1"]),
        ("k1+k1*k2-1", "k1 + k1*k2 - 1", ["-1 - (k2 - 1)*t2*k1 + k1", "k2^2-k2+1", "t2-k2+1"]),
        ("k3-k1", "k3 - k1", ["k1*k2 + k3 - 1", "k1+k1*k2-1"]),
        ("k1^2*k2-1", "k1^2*k2 - 1", ["k1*k2*k3 - 1", "k3-k1"]),
        ("2*k1*k2-k1-k2", "2*k1*k2 - k1 - k2", ["k1*k2 + k1*t2 - t2 - 1", "t2-k2+1"]),
        ("k2+3*k1-2", "k2 + 3*k1 - 2", ["k1+k1*k2-1", "2*k1*k2-k1-k2"]),
        ("3*k1^2-3*k1+1", "3*k1^2 - 3*k1 + 1", ["k2+3*k1-2", "k2^2-k2+1"]),
        ("k1^2-k1+1", "k1^2 - k1 + 1", ["k1+k1*k2-1", "k1^2*k2-1"]),
    ]


def _express(der, seeds, target, budget, note):
    comp = Completion(der, seeds, budget)
    comp.run()
    return comp.express(target, note)


def _chain_certificate(sys, budget):
    """Classical elimination chain, each step found from a few hint members."""
    vars = sys.vars
    fam = sys.hypotheses(("family",))
    k1_hyp = [(p, r) for p, r in fam if p == MultiPoly.var("k1", vars)]
    hyps = k1_hyp
    svars, inv, gens = _saturate(sys, hyps)
    der = Derivation(gens)
    n_eq = len(sys.equations)
    sat_members = list(range(n_eq, len(gens)))
    landmarks = {}
    for name, text, hints in _landmark_plan():
        target = MultiPoly.parse(text, vars).extend(svars)
        seeds = []
        ok = True
        for h in hints:
            if h in landmarks:
                seeds.append(landmarks[h])
                continue
            idx = sys.find(MultiPoly.parse(h, vars))
            if idx is None:
                ok = False
                break
            seeds.append(idx)
        member = None
        if ok:
            member = _express(der, seeds, target, budget, f"landmark {name}")
            if member is None:
                member = _express(der, seeds + sat_members, target, budget, f"landmark {name}")
        if member is None:
            prior = list(range(n_eq)) + sat_members + sorted(landmarks.values())
            member = _express(der, prior, target, budget, f"landmark {name}")
        if member is not None:
            landmarks[name] = member
    witness = None
    if "k1^2-k1+1" in landmarks and "3*k1^2-3*k1+1" in landmarks:
        a, b = landmarks["k1^2-k1+1"], landmarks["3*k1^2-3*k1+1"]
        three = MultiPoly.const(3, svars)
        total = three * der.member(a) - der.member(b)
        if total.is_constant() and total.constant_value() != 0:
            witness = der.add_step(total, [(a, three), (b, MultiPoly.const(-1, svars))], "witness")
    if witness is None:
        comp = Completion(der, list(range(len(gens))), budget)
        witness = comp.run()
        if witness is None:
            return None
    roots = [witness] + sorted(landmarks.values())
    pruned, remap = der.prune(roots)
    used_sat = {i for s in pruned.steps for i, _ in s.cofactors if i in sat_members}
    return Certificate(
        "nonexistence", svars, pruned.generators, hyps, pruned.steps, remap[witness],
        {k: remap[v] for k, v in landmarks.items()}, info={
            "inverse_vars": list(inv),
            "equation_tags": list(sys.tags),
            "hypotheses_used": [str(hyps[i - n_eq][0]) for i in sorted(used_sat)],
        },
    )


TIERS = (("none", ()), ("family", ("family",)), ("distinct", ("family", "distinct")))


def _direct_certificate(sys, budget):
    """Smallest hypothesis tier for which the ideal is trivial, with its derivation."""
    for name, tiers in TIERS:
        hyps = sys.hypotheses(tiers)
        basis = IdealBasis(tuple(sys.equations), tuple(p for p, _ in hyps))
        res = ideal_contains_one(basis, budget)
        if res.status == "trivial":
            return Certificate(
                "nonexistence", res.vars, res.derivation.generators, hyps, res.derivation.steps,
                res.witness, info={"inverse_vars": list(res.inverse_vars), "tier": name},
            )
    return None


def _branch_refutation(skel, item, value, budget):
    """Refute one lost chart member: by a forbidden incidence or by its own ideal."""
    v = tuple(as_fraction(x) for x in value)
    net = skel.net
    if item.startswith("p"):
        pid = (int(item[1]), int(item[2]))
        for lid, l in skel.fixed_lines.items():
            if lid not in net.incidence[pid] and dot(v, tuple(as_fraction(x) for x in l.coords)) == 0:
                return {"item": item, "value": v, "refuted_by": f"{item} would lie on {line_name(lid)}"}
        for qid, q in skel.fixed_points.items():
            if ProjPoint(v) == q:
                return {"item": item, "value": v, "refuted_by": f"{item} would equal {point_name(qid)}"}
    else:
        lid = (int(item[1]), int(item[2]))
        for pid, p in skel.fixed_points.items():
            if lid not in net.incidence[pid] and dot(v, tuple(as_fraction(x) for x in p.coords)) == 0:
                return {"item": item, "value": v, "refuted_by": f"{item} would pass through {point_name(pid)}"}
        for mid, m in skel.fixed_lines.items():
            if ProjLine(v) == m:
                return {"item": item, "value": v, "refuted_by": f"{item} would equal {line_name(mid)}"}
    sys = generate_constraints(skel, overrides={item: v})
    cert = _direct_certificate(sys, budget)
    if cert is None:
        return None
    return {"item": item, "value": v, "refuted_by": "ideal", "certificate": cert}


def _chart_items(sys):
    """Family members whose coordinates come from their chart."""
    out = []
    for lid, fam in sys.skeleton.line_families.items():
        if sys.construction[line_name(lid)].startswith("family") and fam.lost is not None:
            out.append((line_name(lid), fam.lost))
    for pid, fam in sys.skeleton.point_families.items():
        if sys.construction[point_name(pid)].startswith("family") and fam.lost is not None:
            out.append((point_name(pid), fam.lost))
    return out


def prove_nonexistence_44(budget=None):
    budget = budget or DEFAULT_STEP_BUDGET
    skel = build_44_skeleton()
    sys = generate_constraints(skel)
    try:
        direct = _direct_certificate(sys, budget)
        chain = _chain_certificate(sys, budget)
    except Exception as exc:
        if type(exc).__name__ == "BudgetExceeded":
            raise InconclusiveError(str(exc)) from exc
        raise
    if direct is None and chain is None:
        raise InconsistencyError("the (4,4) system is consistent; no certificate")
    cert = chain if chain is not None else direct
    cert.direct = direct if chain is not None else None
    for item, value in _chart_items(sys):
        ref = _branch_refutation(skel, item, value, budget)
        if ref is None:
            raise InconsistencyError(f"branch {item} = {value} could not be refuted")
        cert.branches.append(ref)
    cert.info["required_tier"] = direct.info["tier"] if direct is not None else None
    cert.info["unused_parameters"] = list(sys.unused_params)
    return cert, sys


# (4,3): uniqueness

def _solve_in_powers(comp, var, target, degree):
    """Coefficients ``c`` with ``target == sum c_i var^i`` modulo the ideal, ``i < degree``."""
    vars = comp.derivation.vars
    x = MultiPoly.var(var, vars)
    forms = [comp.normal_form(x**i) for i in range(degree)]
    nt = comp.normal_form(target)
    monos = sorted({e for f in forms + [nt] for e in f.terms})
    rows = [[f.terms.get(e, Fraction(0)) for f in forms] + [nt.terms.get(e, Fraction(0))] for e in monos]
    return solve_linear(rows, degree)


def _poly_in(var, coeffs, vars):
    x = MultiPoly.var(var, vars)
    out = MultiPoly.zero(vars)
    for i, c in enumerate(coeffs):
        out = out + x**i * c
    return out


def prove_uniqueness_43(budget=None):
    budget = budget or DEFAULT_STEP_BUDGET
    skel = build_43_skeleton()
    sys = generate_constraints(skel)
    vars = sys.vars
    chosen = None
    for name, tiers in TIERS:
        hyps = sys.hypotheses(tiers)
        svars, inv, gens = _saturate(sys, hyps)
        der = Derivation(gens)
        comp = Completion(der, range(len(gens)), budget)
        if comp.run() is not None:
            raise InconsistencyError("the (4,3) system has no solution")
        mp = minimal_polynomial(comp, "k2", 8)
        if mp is None:
            continue
        others = {}
        for v in vars:
            if v == "k2":
                continue
            sol = _solve_in_powers(comp, "k2", MultiPoly.var(v, svars), len(mp) - 1)
            if sol is None:
                break
            others[v] = sol
        if len(others) == len(vars) - 1:
            chosen = (name, hyps, svars, inv, der, comp, mp, others)
            break
    if chosen is None:
        raise InconsistencyError("the (4,3) system is not zero-dimensional under any tier")
    tier, hyps, svars, inv, der, comp, mp, others = chosen
    k2 = MultiPoly.var("k2", svars)
    relations = [("k2*k3-1", k2 * MultiPoly.var("k3", svars) - 1),
                 ("k1*k2-1", MultiPoly.var("k1", svars) * k2 - 1)]
    landmarks = {}
    for name, p in relations:
        m = comp.express(p, f"relation {name}")
        if m is not None:
            landmarks[name] = m
    minpoly = _poly_in("k2", mp, svars)
    landmarks["minimal_polynomial"] = comp.express(minpoly, "minimal polynomial")
    solved = {}
    for v, coeffs in others.items():
        rel = MultiPoly.var(v, svars) - _poly_in("k2", coeffs, svars)
        landmarks[f"{v}-solved"] = comp.express(rel, f"{v} in terms of k2")
        solved[v] = str(_poly_in("k2", coeffs, ("k2",)))
    pruned, remap = der.prune(sorted(landmarks.values()))
    witness = {
        "variable": "k2",
        "minimal_polynomial": str(_poly_in("k2", mp, ("k2",))),
        "member": remap[landmarks["minimal_polynomial"]],
        "solved": solved,
    }
    cert = Certificate(
        "uniqueness", svars, pruned.generators, hyps, pruned.steps, witness,
        {k: remap[v] for k, v in landmarks.items()},
        info={"inverse_vars": list(inv), "tier": tier, "automorphism": "k2 -> 1 - k2",
              "equation_tags": list(sys.tags)},
    )
    rn = realize_quotient(sys, cert)
    return cert, rn, sys


def _quotient_values(sys, cert):
    """Values of all parameters in Q[k]/(k^2-k+1) read off the certificate."""
    k = QuotientElem.k()
    values = {"k2": k}
    for v, text in cert.witness["solved"].items():
        values[v] = MultiPoly.parse(text, ("k2",)).evaluate({"k2": k}) if text != "0" else QuotientElem(0)
        if not isinstance(values[v], QuotientElem):
            values[v] = QuotientElem.coerce(values[v])
    return {v: values[v] for v in sys.vars}


def _specialize(obj, values):
    out = []
    for c in obj.coords:
        val = c.evaluate(values) if not c.is_constant() else c.constant_value()
        out.append(QuotientElem.coerce(val))
    return tuple(out)


def realize_quotient(sys, cert):
    values = _quotient_values(sys, cert)
    lines = {k: ProjLine(_specialize(l, values)) for k, l in sys.lines.items()}
    points = {k: ProjPoint(_specialize(p, values)) for k, p in sys.points.items()}
    return RealizedNet(sys.skeleton.net, lines, points, "quotient-k2")


def conjugate_net(rn):
    return rn.map(lambda x: QuotientElem.coerce(x).conjugate())


# verification

def _matches_system(cert, sys):
    """Every generator is a system equation or an adjoined inverse of a hypothesis."""
    inv = cert.info.get("inverse_vars", [])
    base_vars = tuple(v for v in cert.vars if v not in inv)
    if base_vars != tuple(sys.vars):
        return "parameter list differs from the system"
    eq_keys = {_prim(e) for e in sys.equations}
    allowed = {_prim(p) for p, _, _ in sys.nonvanishing}
    hyp_keys = [_prim(p) for p, _ in cert.hypotheses]
    if any(h not in allowed for h in hyp_keys):
        return "hypothesis not among the system's side conditions"
    if len(inv) != len(cert.hypotheses):
        return "inverse variables do not match hypotheses"
    sat = set()
    for (p, _), y in zip(cert.hypotheses, inv):
        sat.add(p.extend(cert.vars) * MultiPoly.var(y, cert.vars) - 1)
    for g in cert.generators:
        if g in sat:
            continue
        if any(g.degree_in(y) > 0 for y in inv):
            return f"generator {g} is not an adjoined inverse"
        if _prim(g.restrict(base_vars)) not in eq_keys:
            return f"generator {g} is not a system equation"
    return None


def verify_certificate(cert, sys):
    """Replay a certificate using only polynomial arithmetic."""
    problem = _matches_system(cert, sys)
    if problem:
        return VerifyResult(False, None, problem)
    der = cert.derivation()
    bad = der.replay()
    if bad is not None:
        return VerifyResult(False, bad, f"step {bad} is not the stated combination")
    if cert.kind == "nonexistence":
        w = der.member(cert.witness)
        if not (w.is_constant() and w.constant_value() != 0):
            return VerifyResult(False, None, "witness is not a nonzero constant")
        if cert.direct is not None:
            sub = verify_certificate(cert.direct, sys)
            if not sub:
                return VerifyResult(False, sub.failed_step, "direct derivation: " + sub.reason)
        for b in cert.branches:
            sub = _verify_branch(sys, b)
            if sub is not None:
                return VerifyResult(False, None, sub)
        return VerifyResult(True, None, "ok")
    if cert.kind == "uniqueness":
        w = cert.witness
        vars = cert.vars
        mp = MultiPoly.parse(w["minimal_polynomial"], ("k2",)).extend(vars)
        if der.member(w["member"]) != mp:
            return VerifyResult(False, None, "minimal polynomial is not a derived member")
        members = {der.member(i) for i in range(len(der))}
        for v, text in w["solved"].items():
            rel = MultiPoly.var(v, vars) - MultiPoly.parse(text, ("k2",)).extend(vars)
            if rel not in members:
                return VerifyResult(False, None, f"solution for {v} is not a derived member")
        values = _quotient_values(sys, cert)
        for e, tag in zip(sys.equations, sys.tags):
            val = e.evaluate(values) if not e.is_constant() else e.constant_value()
            if QuotientElem.coerce(val) != 0:
                return VerifyResult(False, None, f"equation {tag} fails at the solution")
        rn = realize_quotient(sys, cert)
        report = verify_realized_net(rn)
        if report:
            return VerifyResult(False, None, f"realized net fails: {report[0]}")
        for p, r in cert.hypotheses:
            val = p.evaluate(values) if not p.is_constant() else p.constant_value()
            if QuotientElem.coerce(val) == 0:
                return VerifyResult(False, None, f"side condition {r} fails at the solution")
        return VerifyResult(True, None, "ok", sys.item_count())
    return VerifyResult(False, None, f"unknown certificate kind {cert.kind!r}")


def _verify_branch(sys, b):
    skel = sys.skeleton
    item = b["item"]
    v = b["value"]
    if b["refuted_by"] == "ideal":
        bsys = generate_constraints(skel, overrides={item: v})
        sub = verify_certificate(b["certificate"], bsys)
        return None if sub else f"branch {item}: {sub.reason}"
    ref = _branch_refutation(skel, item, v, DEFAULT_STEP_BUDGET)
    if ref is None or ref["refuted_by"] != b["refuted_by"]:
        return f"branch {item}: refutation does not replay"
    # the refuting incidence must also be forbidden by the abstract net
    return None


def landmark_members(cert):
    """``{name: polynomial}`` for the named members of a certificate."""
    der = cert.derivation()
    return {k: der.member(i) for k, i in cert.landmarks.items()}


__all__ = [
    "Certificate",
    "ConstraintSystem",
    "Family",
    "InconclusiveError",
    "InconsistencyError",
    "NetSkeleton",
    "VerifyResult",
    "build_43_skeleton",
    "build_44_skeleton",
    "build_skeleton",
    "conjugate_net",
    "generate_constraints",
    "landmark_members",
    "prove_nonexistence_44",
    "prove_uniqueness_43",
    "realize_quotient",
    "verify_certificate",
]
