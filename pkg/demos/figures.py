"""Write SVG drawings of a few windows into ./figures.

    python3 demos/figures.py [outdir]
"""
import os
import sys

from topoinc.render import RenderOptions, to_svg
from topoinc.sequences import BitSeqSpec
from topoinc.spaces import SpaceSpec, build

SPECS = {
    "tree_4_6": SpaceSpec("A", M=[4, 6]),
    "y_10110": SpaceSpec("Y", g=BitSeqSpec.from_window("10110", 2), K=2),
    "c_100": SpaceSpec("C", g=BitSeqSpec.from_window("100", 1), K=1),
    "qy_100": SpaceSpec("QY", g=BitSeqSpec.from_window("100", 1), K=1),
}


def main(outdir="figures"):
    os.makedirs(outdir, exist_ok=True)
    opts = RenderOptions(cap=12)
    for name, spec in SPECS.items():
        path = os.path.join(outdir, name + ".svg")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(to_svg(build(spec), opts))
        print("wrote", path)


if __name__ == "__main__":
    main(*sys.argv[1:])
