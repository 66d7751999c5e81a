#!/usr/bin/env python3
"""Regenerate the closed-form golden files under golden/.

Tube tables are written straight from the closed-form principal curvatures;
the octonion table is rebuilt from the Fano lines. Nothing here calls the
Rust code.
"""

import json
import math
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent / "golden"

RADII = {"pi_12": math.pi / 12, "pi_8": math.pi / 8, "pi_6": math.pi / 6}


def cot(x):
    return math.cos(x) / math.sin(x)


def coth(x):
    return math.cosh(x) / math.sinh(x)


def columns(r):
    return {
        ("op2", "point"): [("lambda1", cot(r), 8), ("alpha1", 2 * cot(2 * r), 7)],
        ("op2", "line"): [("lambda2", -math.tan(r), 8), ("alpha1", 2 * cot(2 * r), 7)],
        ("op2", "hp2"): [
            ("lambda1", cot(r), 4),
            ("lambda2", -math.tan(r), 4),
            ("alpha1", 2 * cot(2 * r), 3),
            ("alpha2", -2 * math.tan(2 * r), 4),
        ],
        ("oh2", "point"): [("lambda1", coth(r), 8), ("alpha1", 2 * coth(2 * r), 7)],
        ("oh2", "line"): [("lambda2", math.tanh(r), 8), ("alpha1", 2 * coth(2 * r), 7)],
        ("oh2", "hp2"): [
            ("lambda1", coth(r), 4),
            ("lambda2", math.tanh(r), 4),
            ("alpha1", 2 * coth(2 * r), 3),
            ("alpha2", 2 * math.tanh(2 * r), 4),
        ],
    }


def write(path, payload):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2) + "\n")


def tube_tables():
    for tag, r in RADII.items():
        for (ambient, core), rows in columns(r).items():
            write(
                ROOT / "tube-table" / f"{ambient}_{core}_{tag}.json",
                {
                    "ambient": ambient,
                    "core": core,
                    "radius": r,
                    "rows": [{"label": l, "value": v, "multiplicity": m} for l, v, m in rows],
                },
            )
    write(
        ROOT / "tube-table" / "oh2_horosphere.json",
        {
            "ambient": "oh2",
            "core": "horosphere",
            "radius": None,
            "rows": [
                {"label": "lambda1", "value": 1.0, "multiplicity": 8},
                {"label": "alpha1", "value": 2.0, "multiplicity": 7},
            ],
        },
    )


def octonion_table():
    red = lambda i: (i + 6) % 7 + 1
    t = {}
    for i in range(8):
        t[(0, i)] = (1, i)
        t[(i, 0)] = (1, i)
    for i in range(1, 8):
        t[(i, i)] = (-1, 0)
    for i in range(1, 8):
        a, b, c = i, red(i + 1), red(i + 3)
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            t[(x, y)] = (1, z)
            t[(y, x)] = (-1, z)
    rows = [
        {"i": i, "j": j, "sign": t[(i, j)][0], "k": t[(i, j)][1]}
        for i in range(8)
        for j in range(8)
    ]
    write(ROOT / "octonion-table.json", rows)


if __name__ == "__main__":
    tube_tables()
    octonion_table()
