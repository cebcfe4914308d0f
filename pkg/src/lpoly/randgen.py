"""Seeded generators for the verification suites.

Everything here is deterministic in the seed: random lattice polytopes
(as hulls of random integer points), generic localization directions,
admissible axis-split subdivisions paired with lattice polytopes, and
strictly dominant rational shift points.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import counting, linalg
from .hull import hull_of_points
from .polyhedra import Label, LabelledPolyhedron
from .rootsys import RootSystem
from .subdivisions import Subdivision, is_admissible


def random_lattice_polytope(rng: random.Random, k: int, coord_range: int = 4,
                            full_dim: bool = True) -> LabelledPolyhedron:
    """Hull of a few random lattice points, redrawn until nonempty (and
    full-dimensional when requested)."""
    while True:
        npts = rng.randint(k + 1, k + 4)
        pts = [
            tuple(rng.randint(0, coord_range) for _ in range(k))
            for _ in range(npts)
        ]
        P, _ = hull_of_points(k, pts)
        if P.is_empty():
            continue
        if full_dim and P.body_dim() != k:
            continue
        return P


def random_generic_direction(rng: random.Random, P: LabelledPolyhedron):
    """Integer direction pairing nonzero with every edge of the polytope."""
    dirs = []
    for f in P.face_lattice():
        if f.dim == 0:
            dirs.extend(counting.edge_directions(P, f))
    while True:
        xi = tuple(rng.randint(-9, 9) for _ in range(P.dim))
        if all(x == 0 for x in xi):
            continue
        if all(linalg.dot(u, xi) != 0 for u in dirs):
            return xi


def axis_split_subdivision(k: int, axis: int, value: Fraction) -> Subdivision:
    e = tuple(1 if j == axis else 0 for j in range(k))
    ne = tuple(-x for x in e)
    value = Fraction(value)
    return Subdivision(k, [
        LabelledPolyhedron(k, [Label(ne, -value)]),
        LabelledPolyhedron(k, [Label(e, value), Label(ne, -value)]),
        LabelledPolyhedron(k, [Label(e, value)]),
    ])


def grid_subdivision(k: int, values_per_axis) -> Subdivision:
    """Product of per-axis splits; face-closed by construction."""
    import itertools

    axis_cells = []
    for axis in range(k):
        vals = sorted(Fraction(v) for v in values_per_axis[axis])
        if not vals:
            axis_cells.append([[]])
            continue
        e = tuple(1 if j == axis else 0 for j in range(k))
        ne = tuple(-x for x in e)
        pieces = [[Label(ne, -vals[0])]]
        for i, v in enumerate(vals):
            pieces.append([Label(e, v), Label(ne, -v)])
            if i + 1 < len(vals):
                pieces.append([Label(e, v), Label(ne, -vals[i + 1])])
        pieces.append([Label(e, vals[-1])])
        axis_cells.append(pieces)
    cells = [
        LabelledPolyhedron(k, [lab for piece in combo for lab in piece])
        for combo in itertools.product(*axis_cells)
    ]
    return Subdivision(k, cells)


def random_glue_pair(rng: random.Random, k: int):
    """(lattice polytope, admissible subdivision) for the gluing identity."""
    while True:
        delta = random_lattice_polytope(rng, k, coord_range=3)
        # third-integer offsets never contain lattice faces, but transversality
        # against skew faces still needs the exact check
        if k <= 2:
            values = [[Fraction(rng.randint(0, 2) * 3 + 1, 3)] for _ in range(k)]
            S = grid_subdivision(k, values)
        else:
            axis = rng.randrange(k)
            S = axis_split_subdivision(k, axis, Fraction(rng.randint(0, 2) * 3 + 1, 3))
        if is_admissible(S, delta):
            return delta, S


def seeded_dominant_points(R: RootSystem, seed: int, count: int):
    """Strictly dominant rational shift points, deterministic in the seed."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        out.append(tuple(
            Fraction(rng.randint(1, 12), rng.choice([1, 2, 3, 5, 7]))
            for _ in range(R.rank)
        ))
    return out
