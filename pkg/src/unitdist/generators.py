"""Deterministic point-set generators (exact rational coordinates)."""

from __future__ import annotations

from fractions import Fraction
from math import ceil

from . import rng as rngmod
from .partition import make_point

F = Fraction

KINDS = ("random-ball", "unit-chain", "scaled-lattice", "cospherical", "cube")


def _random_ball(n, seed):
    rng = rngmod.stream(seed, "generate", "random-ball")
    den, radius = 8, 3
    cap = radius * den
    pts = []
    seen = set()
    while len(pts) < n:
        cand = tuple(rng.randint(-cap, cap) for _ in range(3))
        if sum(c * c for c in cand) > cap * cap or cand in seen:
            continue
        seen.add(cand)
        pts.append(make_point(F(cand[0], den), F(cand[1], den), F(cand[2], den)))
    return pts, {"den": den, "radius": radius}


def _unit_chain(n, seed):
    return [make_point(i, 0, 0) for i in range(n)], {}


def _lattice_pair_count(s: int, side: int) -> int:
    """Exact unit-distance count of the full side^3 grid scaled by 1/s:
    half the number of ordered grid pairs differing by a vector of squared
    length s^2."""
    total = 0
    s2 = s * s
    for dx in range(-s, s + 1):
        for dy in range(-s, s + 1):
            rem = s2 - dx * dx - dy * dy
            if rem < 0:
                continue
            r = int(rem**0.5)
            while r * r < rem:
                r += 1
            if r * r != rem:
                continue
            for dz in {r, -r}:
                if dx == 0 and dy == 0 and dz == 0:
                    continue
                total += max(side - abs(dx), 0) * max(side - abs(dy), 0) \
                    * max(side - abs(dz), 0)
    return total // 2


def _scaled_lattice(n, seed):
    side = ceil(round(n ** (1 / 3), 9))
    while side**3 < n:
        side += 1
    candidates = list(range(1, 14))
    scores = {s: _lattice_pair_count(s, side) for s in candidates}
    best = max(candidates, key=lambda s: (scores[s], -s))
    pts = []
    for i in range(side):
        for j in range(side):
            for k in range(side):
                if len(pts) >= n:
                    break
                pts.append(make_point(F(i, best), F(j, best), F(k, best)))
    return pts[:n], {"scale": best, "side": side, "search": scores}


def _cospherical(n, seed):
    # exact points on the unit sphere at the origin: images of rational
    # (u, v) under the inverse stereographic parametrization
    pts = []
    den = 7
    ring = 0
    while len(pts) < n:
        ring += 1
        for a in range(-ring, ring + 1):
            for b in range(-ring, ring + 1):
                if max(abs(a), abs(b)) != ring or len(pts) >= n:
                    continue
                u, v = F(a, den), F(b, den)
                q = u * u + v * v + 1
                pts.append(make_point(2 * u / q, 2 * v / q, (q - 2) / q))
    return pts[:n], {"den": den}


def _cube(n, seed):
    side = 1
    while side**3 < n:
        side += 1
    pts = []
    for i in range(side):
        for j in range(side):
            for k in range(side):
                if len(pts) >= n:
                    break
                pts.append(make_point(i, j, k))
    return pts[:n], {"side": side}


_GENERATORS = {
    "random-ball": _random_ball,
    "unit-chain": _unit_chain,
    "scaled-lattice": _scaled_lattice,
    "cospherical": _cospherical,
    "cube": _cube,
}


def generate(kind: str, n: int, seed: int = 0):
    """Deterministic point set of the given kind; returns (points, meta)."""
    if n < 1:
        raise ValueError("need n >= 1")
    if kind not in _GENERATORS:
        raise ValueError(f"unknown generator kind {kind!r}; choose from {KINDS}")
    return _GENERATORS[kind](n, seed)
