"""Two desingularizations of a labelled polyhedron.

Canonical: repeatedly append the summed tight label of a deepest excess
piece, with the offset shrunk until the combinatorial face lattice of the
result stabilizes.  Shift: perturb every r_i by a small generic vector.
Both terminate in a label set whose excess function is constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .polyhedra import (
    ExcessPiece,
    Label,
    LabelledPolyhedron,
    excess,
    excess_decomposition,
    below,
)
from . import linalg


@dataclass(frozen=True)
class DesingularizationStep:
    added: Label
    epsilon: Fraction
    piece_tight: tuple[int, ...]       # tight set of the blown-up piece's top face


@dataclass
class DesingularizationTrace:
    steps: list[DesingularizationStep]
    result: LabelledPolyhedron


def _closure_sets(P: LabelledPolyhedron, pieces: list[ExcessPiece]):
    faces = P.face_lattice()
    out = []
    for piece in pieces:
        cl = set()
        for i in piece.faces:
            for j in range(len(faces)):
                if below(faces[j], faces[i]):
                    cl.add(j)
        out.append(frozenset(cl))
    return out


def _piece_depths(P: LabelledPolyhedron):
    """Longest strictly ascending closure chain starting at each piece."""
    dec = excess_decomposition(P)
    closures = _closure_sets(P, dec.pieces)
    n = len(dec.pieces)
    memo = [None] * n

    def depth_of(i):
        if memo[i] is not None:
            return memo[i]
        best = 0
        for j in range(n):
            if i != j and closures[i] < closures[j]:
                best = max(best, 1 + depth_of(j))
        memo[i] = best
        return best

    return dec, [depth_of(i) for i in range(n)]


def depth(P: LabelledPolyhedron) -> int:
    if P.is_empty():
        raise ValueError("empty polyhedron")
    _, depths = _piece_depths(P)
    return max(depths)


def _piece_top_face(P: LabelledPolyhedron, piece: ExcessPiece):
    faces = P.face_lattice()
    members = sorted(piece.faces)
    maximal = [
        i for i in members
        if not any(j != i and below(faces[i], faces[j]) for j in members)
    ]
    if len(maximal) != 1 or not all(below(faces[i], faces[maximal[0]]) for i in members):
        raise ValueError("piece closure is not the closure of a single face")
    return faces[maximal[0]]


def _lattice_signature(P: LabelledPolyhedron):
    return frozenset(f.tight for f in P.face_lattice())


def canonical_blowup_step(P: LabelledPolyhedron, piece: ExcessPiece):
    """Append the summed label of the piece's face, offset by a stable epsilon."""
    dec, depths = _piece_depths(P)
    if len(dec.pieces) == 1:
        raise ValueError("no positive-excess piece to blow up")
    idx = next((i for i, p in enumerate(dec.pieces) if p == piece), None)
    if idx is None:
        raise ValueError("piece does not belong to this polyhedron")
    if depths[idx] != max(depths):
        raise ValueError("piece is not of maximal depth")
    top = _piece_top_face(P, piece)
    tight = sorted(top.tight)
    vsum = tuple(sum(P.labels[i].v[c] for i in tight) for c in range(P.dim))
    if all(x == 0 for x in vsum):
        raise ValueError("zero summed label")
    rsum = sum((P.labels[i].r for i in tight), Fraction(0))

    def build(eps):
        lab = Label(vsum, rsum + eps, weighted=not linalg.is_primitive(vsum))
        return LabelledPolyhedron(P.dim, list(P.labels) + [lab]), lab

    n_old = len(dec.pieces)
    eps = Fraction(1)
    for _ in range(80):
        cur, lab = build(eps)
        nxt, _ = build(eps / 2)
        if not cur.is_empty() and _lattice_signature(cur) == _lattice_signature(nxt):
            # lattice stabilization is only a proxy for "below every critical
            # threshold": accept the offset once the piece count also drops
            if len(excess_decomposition(cur).pieces) < n_old:
                return cur, lab, eps
        eps /= 2
    raise RuntimeError("no stable blowup offset found")


def canonical_desingularization(P: LabelledPolyhedron) -> DesingularizationTrace:
    """Blow up deepest pieces until the excess function is constant."""
    if P.is_empty():
        raise ValueError("empty polyhedron")
    steps: list[DesingularizationStep] = []
    cur = P
    budget = len(excess_decomposition(P).pieces) + 1
    for _ in range(budget):
        dec, depths = _piece_depths(cur)
        if len(dec.pieces) == 1:
            break
        top_depth = max(depths)
        candidates = [p for p, d in zip(dec.pieces, depths) if d == top_depth]
        piece = min(
            candidates,
            key=lambda p: tuple(sorted(_piece_top_face(cur, p).tight)),
        )
        tight = tuple(sorted(_piece_top_face(cur, piece).tight))
        cur, lab, eps = canonical_blowup_step(cur, piece)
        steps.append(DesingularizationStep(lab, eps, tight))
    dec = excess_decomposition(cur)
    assert len(dec.pieces) == 1, "desingularization must reach constant excess"

    # stabilization: halving every offset must not change the face lattice
    if steps:
        halved = list(P.labels)
        for s in steps:
            halved.append(Label(s.added.v, s.added.r - s.epsilon / 2, weighted=s.added.weighted))
        again = LabelledPolyhedron(P.dim, halved)
        assert _lattice_signature(again) == _lattice_signature(cur)
    return DesingularizationTrace(steps, cur)


def _first_primes(n: int):
    primes = []
    x = 2
    while len(primes) < n:
        if all(x % p for p in primes):
            primes.append(x)
        x += 1
    return primes


def _constant_excess(P: LabelledPolyhedron) -> bool:
    faces = P.face_lattice()
    if not faces:
        return False
    values = {excess(P, f) for f in faces}
    return len(values) == 1


def shift_desingularization(P: LabelledPolyhedron, eta=None) -> LabelledPolyhedron:
    """Perturb every label offset; auto mode picks a constant-excess shift.

    Auto perturbations are -delta * p_i^t over the first primes p_i, with
    delta halved until the shifted polyhedron has constant excess and, when
    that ladder is exhausted at some t, the prime powers bumped (a fixed
    additive relation among the labels can kill a single power, never all).
    Facet directions of the result are always a subset of the input label
    vectors.
    """
    if P.is_empty():
        raise ValueError("empty polyhedron")
    n = len(P.labels)
    if eta is not None:
        if len(eta) != n:
            raise ValueError("eta must have one entry per label")
        shifted = LabelledPolyhedron(
            P.dim,
            [Label(l.v, l.r + Fraction(e), weighted=l.weighted) for l, e in zip(P.labels, eta)],
        )
        if shifted.is_empty():
            raise ValueError("empty shift")
        return shifted

    denom = 1
    for lab in P.labels:
        denom = denom * lab.r.denominator // math.gcd(denom, lab.r.denominator)
    primes = _first_primes(n)
    for power in range(1, 9):
        delta = Fraction(1, denom)
        for _ in range(60):
            shifted = LabelledPolyhedron(
                P.dim,
                [
                    Label(l.v, l.r - delta * (p ** power), weighted=l.weighted)
                    for l, p in zip(P.labels, primes)
                ],
            )
            if not shifted.is_empty() and _constant_excess(shifted):
                return shifted
            delta /= 2
    raise RuntimeError("no constant-excess shift found")
