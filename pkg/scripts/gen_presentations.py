#!/usr/bin/env python3
"""Regenerate the bundled presentation files from the builders.

The committed files under src/ims/presentations/ are plain data; this
script keeps them in sync with atom_presentation / markov_presentation.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from ims.gsbasis import atom_presentation, markov_presentation, render_presentation

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "ims" / "presentations"


def write(name: str, header: str, text: str):
    OUT.mkdir(parents=True, exist_ok=True)
    path = OUT / name
    path.write_text(f"# {header}\n# generated by scripts/gen_presentations.py\n{text}")
    print(f"wrote {path} ({text.count(chr(10))} relations)")


def main():
    write(
        "r1_comp.pres",
        "reduced relations of the complemented atom algebra, n = 2",
        render_presentation(atom_presentation(2)),
    )
    for n in (3, 4, 5):
        write(
            f"markov_{n}.pres",
            f"atom algebra with chain constraints, n = {n}",
            render_presentation(markov_presentation(n)),
        )


if __name__ == "__main__":
    main()
