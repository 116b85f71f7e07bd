"""Solve the (4,3) system, print the realized net and check its conjugate."""

import argparse
from dataclasses import dataclass
from pathlib import Path

from tropnet.nets import verify_realized_net
from tropnet.projective import QuotientElem
from tropnet.prover import conjugate_net, prove_uniqueness_43, verify_certificate


@dataclass
class Config:
    out: Path | None = None
    budget: int | None = None


def fmt(x):
    x = QuotientElem.coerce(x)
    return str(x)


def show(rn, title):
    print(title)
    for lid in sorted(rn.lines):
        print(f"  l{lid[0]}{lid[1]} [{' : '.join(fmt(c) for c in rn.lines[lid].coords)}]")
    for pid in sorted(rn.points):
        print(f"  p{pid[0]}{pid[1]} ({' : '.join(fmt(c) for c in rn.points[pid].coords)})")


def main(cfg):
    cert, rn, system = prove_uniqueness_43(cfg.budget)
    w = cert.witness
    print(f"minimal polynomial: {w['minimal_polynomial']}")
    for v, e in w["solved"].items():
        print(f"  {v} = {e}")
    show(rn, "\nnet over Q[k]/(k^2 - k + 1), k = k2:")
    ok = bool(verify_certificate(cert, system)) and not verify_realized_net(rn)
    conj = conjugate_net(rn)
    ok_conj = not verify_realized_net(conj)
    print(f"\ncertificate and net verified: {ok}")
    print(f"conjugate net (k -> 1 - k) verified: {ok_conj}")
    if cfg.out:
        cfg.out.write_text(cert.dumps())
        print(f"certificate written to {cfg.out}")
    return 0 if ok and ok_conj else 1


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path)
    ap.add_argument("--budget", type=int)
    args = ap.parse_args()
    raise SystemExit(main(Config(**vars(args))))
