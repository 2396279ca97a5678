"""Point-set file format: a count header, then one point per line as three
exact rationals "num/den num/den num/den" (integers allowed)."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .partition import make_point


def dumps_points(points) -> str:
    lines = [f"n={len(points)} format=rational3"]
    for p in points:
        p = make_point(*p)
        lines.append(f"{p.x} {p.y} {p.z}")
    return "\n".join(lines) + "\n"


def loads_points(text: str):
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("missing point-file header 'n=<count>'")
    head = dict(part.split("=", 1) for part in lines[0].split())
    count = int(head["n"])
    rows = lines[1:]
    if len(rows) != count:
        raise ValueError(f"header says {count} points, file has {len(rows)}")
    pts = []
    for ln in rows:
        xs = ln.split()
        if len(xs) != 3:
            raise ValueError(f"bad point row {ln!r}")
        pts.append(make_point(*(Fraction(x) for x in xs)))
    return pts


def write_points(path, points):
    Path(path).write_text(dumps_points(points))


def read_points(path):
    return loads_points(Path(path).read_text())
