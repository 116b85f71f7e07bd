"""Write the schematic SVG figures and amoeba samples into one directory."""

import argparse
from dataclasses import dataclass, field
from pathlib import Path

from tropnet.algebra import degeneration_32, degeneration_T
from tropnet.tropical import (
    amoeba_boundary_samples,
    render_svg,
    samples_to_csv,
    trop_line_center,
    trop_point_location,
)

LINES_32 = {"L11": (1, 0, 0), "L12": (0, 1, -1), "L21": (0, 0, 1),
            "L22": (1, -1, 0), "L31": (0, 1, 0), "L32": (1, 0, -1)}
LINES_44 = {"L11": (0, 0, 1), "L12": (1, 1, 1), "L21": (1, 0, 0),
            "L22": (0, 1, 0), "L31": (1, 0, 1), "L32": (0, 1, 1)}
POINTS_44 = {"P11": (0, 1, 0), "P12": (1, 0, 0), "P21": (0, 1, -1), "P22": (1, 0, -1)}


@dataclass
class Config:
    outdir: Path = Path("figures")
    t_values: list = field(default_factory=lambda: [2, 10, 100, 10000])
    count: int = 401


def main(cfg):
    cfg.outdir.mkdir(parents=True, exist_ok=True)
    written = []

    def write(name, text):
        path = cfg.outdir / name
        path.write_text(text)
        written.append(path)

    m = degeneration_32()
    write("net_32.svg", render_svg([(k, trop_line_center(v, m)) for k, v in LINES_32.items()]))
    m = degeneration_T()
    lines = [(k, trop_line_center(v, m)) for k, v in LINES_44.items()]
    points = [(k, trop_point_location(v, m)) for k, v in POINTS_44.items()]
    write("net_44_fixed.svg", render_svg(lines, points))

    natural = amoeba_boundary_samples(count=cfg.count)
    write("amoeba_natural.csv", samples_to_csv(natural))
    write("amoeba_natural.svg", render_svg(samples=natural, extent=4))
    for t in cfg.t_values:
        s = amoeba_boundary_samples(base="t", t=t, count=cfg.count)
        write(f"amoeba_t{t}.csv", samples_to_csv(s))
        write(f"amoeba_t{t}.svg", render_svg(samples=s, extent=4))
    for p in written:
        print(p)
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", type=Path, default=Path("figures"))
    ap.add_argument("--count", type=int, default=401)
    args = ap.parse_args()
    raise SystemExit(main(Config(outdir=args.outdir, count=args.count)))
