import json

import pytest

from tropnet.algebra import Completion, Derivation, MultiPoly
from tropnet.nets import verify_realized_net
from tropnet.projective import ProjLine, ProjPoint, QuotientElem, incident
from tropnet.prover import (
    Certificate,
    build_43_skeleton,
    build_44_skeleton,
    conjugate_net,
    generate_constraints,
    landmark_members,
    prove_nonexistence_44,
    prove_uniqueness_43,
    verify_certificate,
)


@pytest.fixture(scope="module")
def proof44():
    return prove_nonexistence_44()


@pytest.fixture(scope="module")
def proof43():
    return prove_uniqueness_43()


def _dot(p, l):
    return sum((a * b for a, b in zip(p.coords, l.coords)), MultiPoly.zero(p.coords[0].vars))


# skeletons

def test_44_skeleton_shape():
    sk = build_44_skeleton()
    assert len(sk.fixed_lines) == 6 and len(sk.fixed_points) == 4
    assert sk.fixed_lines[(3, 1)] == ProjLine((1, 0, 1))
    assert sk.fixed_lines[(3, 2)] == ProjLine((0, 1, 1))
    shapes = {(f.kind, f.item): f.shape() for f in sk.families()}
    assert shapes[("line", (4, 1))] == "[1:0:k1]"
    assert shapes[("line", (4, 3))] == "[k2:1:1]"
    assert shapes[("line", (4, 4))] == "[1:k3:1]"
    assert shapes[("point", (3, 3))] == "(1:m1:-1)"
    assert shapes[("point", (4, 4))] == "(1:m2:-1)"
    assert shapes[("point", (3, 1))] == "(0:1:t1)"
    assert shapes[("point", (2, 3))] == "(1:s1:-s1 - 1)"
    reasons = [r for _, r in sk.nonvanishing()]
    for want in ("k1 != 0", "k1 != 1", "m1 != 0", "m1 != m2", "s1 != s2", "t1 != t2"):
        assert any(r.startswith(want) for r in reasons)


def test_every_item_has_provenance():
    for sk in (build_44_skeleton(), build_43_skeleton()):
        for f in sk.families():
            name = ("l" if f.kind == "line" else "p") + "".join(map(str, f.item))
            assert "center" in sk.provenance[name] or "location" in sk.provenance[name]
        assert len(set(sk.params)) == len(sk.params)


def test_43_skeleton_shape():
    sk = build_43_skeleton()
    assert sk.fixed_lines[(3, 2)] == ProjLine((0, 1, 1))
    assert sk.fixed_lines[(4, 1)] == ProjLine((1, 0, 1))
    assert sk.fixed_points[(3, 3)] == ProjPoint((1, 1, -1))
    shapes = {(f.kind, f.item): f.shape() for f in sk.families()}
    assert shapes[("line", (3, 1))] == "[1:0:k1]"
    assert shapes[("line", (3, 3))] == "[1:k3:1]"
    assert shapes[("line", (4, 3))] == "[k2:1:1]"


# constraint systems

CLASSICAL_44 = [
    "k2 + m1*k3 - 1",
    "k1*k2 + k3 - 1",
    "(k3 - 1) + t2*k1 + k1",
    "-1 - (k2 - 1)*t2*k1 + k1",
    "k2 + m1 - k1*k2 + k1 - 1",
    "k1*k2 + k2*k3 - k1 - k2",
    "k1*k2 + k1*t2 - t2 - 1",
    "k1*k2*k3 - 1",
]


def test_44_system_contains_classical_equations():
    sys = generate_constraints(build_44_skeleton())
    for text in CLASSICAL_44:
        assert sys.find(MultiPoly.parse(text, sys.vars)) is not None, text
    assert sys.points[(3, 4)].same_as(ProjPoint(tuple(MultiPoly.parse(x, sys.vars) for x in ("k1", "1", "-1"))))


def test_incidence_equations_are_dot_products():
    for sk in (build_44_skeleton(), build_43_skeleton()):
        sys = generate_constraints(sk)
        plain = [(e, t) for e, t in zip(sys.equations, sys.tags) if "through" not in t]
        assert plain
        for e, tag in plain:
            p, _, l = tag.split()
            pid, lid = (int(p[1]), int(p[2])), (int(l[1]), int(l[2]))
            assert sys.find(_dot(sys.points[pid], sys.lines[lid])) is not None
            assert e.primitive()[1] == _dot(sys.points[pid], sys.lines[lid]).primitive()[1]


def test_declared_incidences_hold_or_are_equations():
    # every abstract incidence is either identically true or emitted as an equation
    sys = generate_constraints(build_44_skeleton())
    net = sys.skeleton.net
    for p in net.points():
        for l in net.incidence[p]:
            d = _dot(sys.points[p], sys.lines[l])
            assert d.is_zero() or sys.find(d) is not None


# (4,4)

def test_44_certificate(proof44):
    cert, sys = proof44
    assert cert.kind == "nonexistence"
    w = cert.member(cert.witness)
    assert w.is_constant() and w.constant_value() != 0
    assert verify_certificate(cert, sys)
    members = landmark_members(cert)
    assert members["k2^2-k2+1"] == MultiPoly.parse("k2^2 - k2 + 1", cert.vars)
    assert members["3*k1^2-3*k1+1"] == MultiPoly.parse("3*k1^2 - 3*k1 + 1", cert.vars)


def test_44_landmarks_reduce_to_zero(proof44):
    cert, sys = proof44
    # independent check: both landmark polynomials reduce to zero modulo a
    # fresh basis completion of the system's equations plus its hypotheses
    from tropnet.prover import _saturate

    svars, inv, gens = _saturate(sys, cert.hypotheses)
    comp = Completion(Derivation(gens), range(len(gens)))
    comp.run()
    for text in ("k2^2 - k2 + 1", "3*k1^2 - 3*k1 + 1"):
        assert comp.normal_form(MultiPoly.parse(text, svars)).is_zero()


def test_44_json_round_trip(proof44):
    cert, sys = proof44
    text = cert.dumps()
    again = Certificate.from_json(json.loads(text))
    assert again.dumps() == text
    assert verify_certificate(again, sys)


def _tamper(cert):
    obj = json.loads(cert.dumps())
    obj2 = Certificate.from_json(obj)
    step = obj2.steps[0]
    i, q = step.cofactors[0]
    obj2.steps[0] = type(step)(step.target, ((i, q + 1),) + tuple(step.cofactors[1:]), step.note)
    return obj2


def test_44_tampering_is_rejected(proof44):
    cert, sys = proof44
    bad = _tamper(cert)
    res = verify_certificate(bad, sys)
    assert not res and res.failed_step == 0


def test_certificate_must_match_the_system(proof44, proof43):
    cert, _ = proof44
    _, _, sys43 = proof43
    assert not verify_certificate(cert, sys43)


def test_degenerate_branch_is_refuted(proof44):
    cert, _ = proof44
    assert cert.branches
    for b in cert.branches:
        assert b["refuted_by"]


# (4,3)

FINAL_43_LINES = {
    (1, 1): ("0", "0", "1"), (1, 2): ("1", "1", "1"), (1, 3): ("k^2", "1", "k"),
    (2, 1): ("1", "0", "0"), (2, 2): ("0", "1", "0"), (2, 3): ("k", "1", "k+1"),
    (3, 1): ("k", "0", "1"), (3, 2): ("0", "1", "1"), (3, 3): ("k", "1", "k"),
    (4, 1): ("1", "0", "1"), (4, 2): ("0", "1", "k"), (4, 3): ("k", "1", "1"),
}
FINAL_43_POINTS = {
    (1, 1): ("0", "1", "0"), (1, 2): ("1", "0", "0"), (1, 3): ("-1", "k", "0"),
    (2, 1): ("0", "1", "-1"), (2, 2): ("1", "0", "-1"), (2, 3): ("-1", "1-k", "k"),
    (3, 1): ("0", "k", "-1"), (3, 2): ("-1", "0", "k"), (3, 3): ("1", "1", "-1"),
}


def _q(text):
    return MultiPoly.parse(text, ("k",)).evaluate({"k": QuotientElem.k()})


def test_43_minimal_polynomial(proof43):
    cert, rn, sys = proof43
    assert cert.witness["minimal_polynomial"] == "k2^2 - k2 + 1"
    assert verify_certificate(cert, sys)
    assert landmark_members(cert)["minimal_polynomial"] == MultiPoly.parse("k2^2 - k2 + 1", cert.vars)


def test_43_net_matches_classical_list(proof43):
    _, rn, _ = proof43
    assert verify_realized_net(rn) == []
    for lid, coords in FINAL_43_LINES.items():
        assert rn.lines[lid].same_as(ProjLine(tuple(_q(c) for c in coords))), lid
    for pid, coords in FINAL_43_POINTS.items():
        assert rn.points[pid].same_as(ProjPoint(tuple(_q(c) for c in coords))), pid


def test_43_conjugate_is_a_net(proof43):
    _, rn, _ = proof43
    conj = conjugate_net(rn)
    assert verify_realized_net(conj) == []
    assert any(not conj.lines[l].same_as(rn.lines[l]) for l in rn.lines)


def test_43_tampering_is_rejected(proof43):
    cert, _, sys = proof43
    assert not verify_certificate(_tamper(cert), sys)
    obj = json.loads(cert.dumps())
    obj["witness"]["solved"]["k1"] = "k2"
    assert not verify_certificate(Certificate.from_json(obj), sys)


def test_net_points_lie_on_declared_lines(proof43):
    _, rn, _ = proof43
    for p, ids in rn.net.incidence.items():
        for l in ids:
            assert incident(rn.points[p], rn.lines[l])


def test_certificates_are_deterministic(proof44, proof43):
    assert prove_nonexistence_44()[0].dumps() == proof44[0].dumps()
    assert prove_uniqueness_43()[0].dumps() == proof43[0].dumps()


def test_43_checks_every_item(proof43):
    cert, _, sys = proof43
    assert verify_certificate(cert, sys).items_checked == 4 * 3 + 9
