"""Polyhedral subdivisions: validation, admissibility, Euler and gluing
identities, and the wall-dual subdivision of the dominant chamber.

Cells are labelled polyhedra (unbounded ones included).  Pairwise checks
lean on an exact relint-sample argument: a nonnegative affine functional
vanishing at a relative-interior point of a convex set vanishes on all of
it, so an intersection is automatically inside the minimal closed face
around its sample and only the reverse inclusion needs a feasibility test.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from . import counting, linalg
from ._feasible import feasible_point
from .polyhedra import Face, Label, LabelledPolyhedron, intersect
from .report import Report
from .rootsys import RootSystem


@dataclass
class Subdivision:
    dim: int
    cells: list[LabelledPolyhedron]
    walls: list[tuple[frozenset, frozenset]] | None = None  # (sigma, tau) metadata


def _weak_rows(P: LabelledPolyhedron):
    return [(tuple(Fraction(x) for x in lab.v), -lab.r, False) for lab in P.labels]


def _relint_rows(P: LabelledPolyhedron, F: Face):
    rows = []
    for i, lab in enumerate(P.labels):
        coeffs = tuple(Fraction(x) for x in lab.v)
        if i in F.tight:
            rows.append((coeffs, -lab.r, False))
            rows.append((tuple(-c for c in coeffs), lab.r, False))
        else:
            rows.append((coeffs, -lab.r, True))
    return rows


def _interior_sample(P: LabelledPolyhedron):
    """Relative-interior sample without computing the face lattice.

    Classifies each label as implicit equality or not with one feasibility
    probe per label, then solves with the equalities pinned and the rest
    strict.  None when P is empty.
    """
    base = _weak_rows(P)
    if feasible_point(base, P.dim) is None:
        return None
    rows = []
    for i, lab in enumerate(P.labels):
        coeffs = tuple(Fraction(x) for x in lab.v)
        probe = base + [(coeffs, -lab.r, True)]
        if feasible_point(probe, P.dim) is None:
            rows.append((coeffs, -lab.r, False))
            rows.append((tuple(-c for c in coeffs), lab.r, False))
        else:
            rows.append((coeffs, -lab.r, True))
    return feasible_point(rows, P.dim)


def _rows_contain(rows, point) -> bool:
    for coeffs, const, strict in rows:
        val = sum(c * x for c, x in zip(coeffs, point)) + const
        if val < 0 or (val == 0 and strict):
            return False
    return True


def _is_face_of(Q_rows, q_sample, cell: LabelledPolyhedron) -> bool:
    """Is the set Q (rows, with relint sample q, known subset of cell) a
    closed face of the cell?

    Q lies inside the minimal closed face of the cell at q; equality holds
    iff that closed face satisfies Q's defining rows.
    """
    tight = cell.tight_at(q_sample)
    fbar_rows = _weak_rows(cell)
    for i in tight:
        lab = cell.labels[i]
        fbar_rows.append((tuple(-Fraction(x) for x in lab.v), lab.r, False))
    for coeffs, const, strict in Q_rows:
        probe = fbar_rows + [(tuple(-c for c in coeffs), -const, True)]
        if feasible_point(probe, cell.dim) is not None:
            return False
    return True


def _rows_hold_on(host_rows, check_rows, dim: int) -> bool:
    """Does every row of ``check_rows`` hold everywhere on ``host_rows``?"""
    for coeffs, const, strict in check_rows:
        probe = host_rows + [(tuple(-c for c in coeffs), -const, True)]
        if feasible_point(probe, dim) is not None:
            return False
    return True


def _interest_box(S: Subdivision, pad: int = 1):
    samples = []
    for cell in S.cells:
        for f in cell.face_lattice():
            samples.append(f.sample)
    if not samples:
        return None
    lo = [min(s[c] for s in samples) - pad for c in range(S.dim)]
    hi = [max(s[c] for s in samples) + pad for c in range(S.dim)]
    return lo, hi, samples


def _grid_points(lo, hi, steps: int = 7):
    axes = []
    for a, b in zip(lo, hi):
        if a == b:
            axes.append([Fraction(a)])
        else:
            axes.append([Fraction(a) + Fraction(j * (b - a), steps) for j in range(steps + 1)])
    return [tuple(p) for p in itertools.product(*axes)]


def _in_region(point, region) -> bool:
    if region == "all":
        return True
    if region == "dominant":
        return all(x >= 0 for x in point)
    raise ValueError(f"unknown region {region!r}")


def validate(S: Subdivision, region: str = "all") -> Report:
    """Face-closedness, proper pairwise intersections and region coverage."""
    rep = Report(f"subdivision (region={region})")
    cells = S.cells
    rep.add(f"cells: {len(cells)}")
    dims = [c.body_dim() for c in cells]
    if any(d < 0 for d in dims):
        rep.fail("empty-cell: subdivision contains an empty cell")
        return rep
    tops = [c.top_face().sample for c in cells]

    wrows = [_weak_rows(c) for c in cells]

    # (a) every closed face of every cell is a cell.  For a candidate cell D
    # with relint sample inside the closed face: D is inside every tight
    # hyperplane for free (a bound achieved at a relint point of a convex
    # set is achieved identically), so only D-inside-cell and face-inside-D
    # need feasibility probes.
    for ci, cell in enumerate(cells):
        for f in cell.face_lattice():
            fbar_rows = list(wrows[ci])
            for i in f.tight:
                lab = cell.labels[i]
                fbar_rows.append((tuple(-Fraction(x) for x in lab.v), lab.r, False))
            hit = False
            for cj, other in enumerate(cells):
                if dims[cj] != f.dim:
                    continue
                if not _rows_contain(fbar_rows, tops[cj]):
                    continue
                if not other.contains(f.sample, "closed"):
                    continue
                if _rows_hold_on(fbar_rows, wrows[cj], other.dim) and _rows_hold_on(
                    wrows[cj], wrows[ci], other.dim
                ):
                    hit = True
                    break
            if not hit:
                rep.fail(f"missing-face: cell {ci} face {sorted(f.tight)}")

    # (b) pairwise intersections are closed faces of each
    for ci in range(len(cells)):
        for cj in range(ci + 1, len(cells)):
            Q = intersect(cells[ci], cells[cj])
            q = _interior_sample(Q)
            if q is None:
                continue  # empty intersection: the trivial common face
            for ck, other in ((ci, cj), (cj, ci)):
                if not _is_face_of(wrows[other], q, cells[ck]):
                    rep.fail(f"bad-intersection: cells {ci} {cj} not a face of {ck}")

    # (c) coverage of the region on a grid plus all face samples
    box = _interest_box(S)
    if box is not None:
        lo, hi, samples = box
        probes = list(dict.fromkeys(_grid_points(lo, hi) + samples))
        misses = 0
        for p in probes:
            if not _in_region(p, region):
                continue
            if not any(cell.contains(p, "closed") for cell in cells):
                misses += 1
                if misses <= 5:
                    rep.fail(f"uncovered: {tuple(str(x) for x in p)}")
        if misses > 5:
            rep.fail(f"uncovered-total: {misses}")
    return rep


def is_admissible(S: Subdivision, delta: LabelledPolyhedron) -> bool:
    """Transversality of every open cell face against every open face of delta."""
    if not delta.is_bounded():
        raise ValueError("moment polytope must be bounded")
    k = delta.dim
    for cell in S.cells:
        for f in cell.face_lattice():
            f_rows = _relint_rows(cell, f)
            for g in delta.face_lattice():
                rows = f_rows + _relint_rows(delta, g)
                if feasible_point(rows, k) is None:
                    continue
                span = [list(v) for v in f.affine_basis] + [list(v) for v in g.affine_basis]
                if linalg.rank(span) < k:
                    return False
    return True


def euler_check(S: Subdivision, samples: int, seed: int = 0, region: str = "all") -> Report:
    """Alternating codimension sum over the cells containing each probe point."""
    rep = Report(f"euler identity ({samples} points)")
    box = _interest_box(S)
    if box is None:
        rep.fail("empty subdivision")
        return rep
    lo, hi, face_samples = box
    rng = random.Random(seed)
    probes = [p for p in dict.fromkeys(face_samples) if _in_region(p, region)]
    while len(probes) < samples:
        p = tuple(
            Fraction(rng.randint(int(a * 7), int(b * 7)), 7) for a, b in zip(lo, hi)
        )
        if _in_region(p, region):
            probes.append(p)
    probes = probes[:samples]
    k = S.dim
    bad = 0
    for p in probes:
        total = sum(
            (-1) ** (k - cell.body_dim())
            for cell in S.cells
            if cell.contains(p, "closed")
        )
        if total != 1:
            bad += 1
            if bad <= 5:
                rep.fail(f"sum: {tuple(str(x) for x in p)} -> {total}")
    rep.add(f"points: {len(probes)}")
    if bad > 5:
        rep.fail(f"bad-total: {bad}")
    return rep


def glue_count_check(delta: LabelledPolyhedron, S: Subdivision) -> Report:
    """Inclusion-exclusion of lattice points and characters over the cells."""
    rep = Report("gluing counts")
    if not delta.is_bounded():
        raise ValueError("moment polytope must be bounded")
    k = delta.dim
    direct = counting.toric_rr(delta, 1)
    total: dict = {}
    count_total = 0
    for cell in S.cells:
        piece = intersect(delta, cell)
        sign = (-1) ** (k - cell.body_dim())
        pts = counting.lattice_points(piece, 1)
        count_total += sign * len(pts)
        for pt in pts:
            total[pt] = total.get(pt, 0) + sign
    total = {pt: c for pt, c in total.items() if c != 0}
    rep.add(f"points: {len(direct)}")
    if count_total != len(direct):
        rep.fail(f"count: {count_total} != {len(direct)}")
    if total != direct:
        rep.fail("character-mismatch")
    return rep


# -- the wall-dual subdivision ------------------------------------------------


def _cone_cell(R: RootSystem, apex, gens) -> LabelledPolyhedron:
    """Shifted simplicial cone apex + cone(gens) as a labelled polyhedron."""
    k = R.rank
    labels = []
    if gens:
        rows = [list(g) for g in gens]
        for w in linalg.kernel_basis(rows, cols=k):
            r = linalg.dot(apex, w)
            labels.append(Label(w, r, weighted=not linalg.is_primitive(w)))
            labels.append(Label(tuple(-x for x in w), -r, weighted=not linalg.is_primitive(w)))
        for i in range(len(gens)):
            ei = [Fraction(1 if j == i else 0) for j in range(len(gens))]
            u = linalg.solve(rows, ei)
            assert u is not None
            ui = linalg.clear_denominators(u)
            labels.append(Label(ui, linalg.dot(apex, ui)))
    else:
        for i in range(k):
            e = tuple(1 if j == i else 0 for j in range(k))
            r = Fraction(apex[i])
            labels.append(Label(e, r))
            labels.append(Label(tuple(-x for x in e), -r))
    return LabelledPolyhedron(k, labels)


def dual_subdivision(R: RootSystem, lam) -> Subdivision:
    """Subdivision of the chamber dual to the wall structure, shifted to lam.

    One cell per wall pair sigma <= tau, spanned at lam by the fundamental
    weights of sigma and the negated simple roots missing from tau; its
    codimension is dim tau - dim sigma.
    """
    lam = tuple(Fraction(x) for x in lam)
    if len(lam) != R.rank or any(x <= 0 for x in lam):
        raise ValueError("shift point must be strictly dominant")
    k = R.rank
    cells = []
    walls_meta = []
    for tau_mask in range(1 << k):
        tau = frozenset(i for i in range(k) if tau_mask >> i & 1)
        sigma_mask = tau_mask
        while True:
            sigma = frozenset(i for i in range(k) if sigma_mask >> i & 1)
            gens = []
            for i in sorted(sigma):
                gens.append(tuple(Fraction(1 if j == i else 0) for j in range(k)))
            for j in range(k):
                if j not in tau:
                    gens.append(tuple(Fraction(-R.cartan[i][j]) for i in range(k)))
            cell = _cone_cell(R, lam, gens)
            expected_codim = len(tau) - len(sigma)
            if k - cell.body_dim() != expected_codim:
                raise ValueError("degenerate cell: shift point is not generic")
            cells.append(cell)
            walls_meta.append((sigma, tau))
            if sigma_mask == 0:
                break
            sigma_mask = (sigma_mask - 1) & tau_mask
    order = sorted(
        range(len(cells)),
        key=lambda i: (sorted(walls_meta[i][1]), sorted(walls_meta[i][0])),
    )
    return Subdivision(k, [cells[i] for i in order], [walls_meta[i] for i in order])


def wall_alternating_sums(S: Subdivision, delta: LabelledPolyhedron) -> dict:
    """Per-wall alternating count of subdivision cells meeting delta."""
    if S.walls is None:
        raise ValueError("subdivision carries no wall metadata")
    sums: dict = {}
    delta_rows = _weak_rows(delta)
    for (sigma, tau), cell in zip(S.walls, S.cells):
        rows = delta_rows + _weak_rows(cell)
        if feasible_point(rows, delta.dim) is None:
            continue
        sums[tau] = sums.get(tau, 0) + (-1) ** (len(tau) - len(sigma))
    return sums
