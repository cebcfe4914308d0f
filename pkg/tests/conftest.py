"""Shared test polytopes."""

from fractions import Fraction

import pytest

from lpoly.polyhedra import LabelledPolyhedron, label


def unit_square():
    return LabelledPolyhedron(2, [
        label(1, 0, 0), label(0, 1, 0), label(-1, 0, -1), label(0, -1, -1),
    ])


def unit_cube():
    return LabelledPolyhedron(3, [
        label(1, 0, 0, 0), label(0, 1, 0, 0), label(0, 0, 1, 0),
        label(-1, 0, 0, -1), label(0, -1, 0, -1), label(0, 0, -1, -1),
    ])


def egyptian_pyramid():
    """Square base of side 2 at height 0, apex (1, 1, 1)."""
    return LabelledPolyhedron(3, [
        label(0, 0, 1, 0),
        label(1, 0, -1, 0),
        label(0, 1, -1, 0),
        label(-1, 0, -1, -2),
        label(0, -1, -1, -2),
    ])


def standard_simplex(k):
    labs = [label(*(1 if j == i else 0 for j in range(k)), 0) for i in range(k)]
    labs.append(label(*(-1 for _ in range(k)), -1))
    return LabelledPolyhedron(k, labs)


def weighted_triangle():
    """Vertices (0,0), (2,0), (0,1); the (0,1) corner has structure group Z/2."""
    return LabelledPolyhedron(2, [
        label(1, 0, 0), label(0, 1, 0), label(-1, -2, -2),
    ])


def doubled_interval():
    """[0, 1] with the lower bound listed twice (excess 1 at 0)."""
    return LabelledPolyhedron(1, [label(1, 0), label(1, 0), label(-1, -1)])


def half_interval():
    """[0, 1/2]."""
    return LabelledPolyhedron(1, [label(1, 0), label(-1, Fraction(-1, 2))])


def segment(a, b):
    return LabelledPolyhedron(1, [label(1, a), label(-1, -Fraction(b))])


@pytest.fixture
def square():
    return unit_square()


@pytest.fixture
def cube():
    return unit_cube()


@pytest.fixture
def pyramid():
    return egyptian_pyramid()
