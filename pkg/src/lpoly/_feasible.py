"""Exact feasibility of mixed strict/weak rational inequality systems.

A row ``(coeffs, const, strict)`` encodes ``coeffs . t + const >= 0`` (or
``> 0`` when strict).  Fourier-Motzkin elimination decides feasibility and
back-substitution produces an exact rational witness.  The systems handled
here are tiny (<= ~20 rows, <= 6 variables), so the quadratic blowup of
elimination never matters once duplicate and dominated rows are pruned.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Row = tuple[tuple[Fraction, ...], Fraction, bool]


def _normalize(coeffs, const: Fraction, strict: bool) -> Row:
    """Scale a row by a positive rational so coefficients are coprime ints."""
    lcm = 1
    for x in coeffs:
        lcm = lcm * x.denominator // gcd(lcm, x.denominator)
    lcm = lcm * const.denominator // gcd(lcm, const.denominator)
    ints = [int(x * lcm) for x in coeffs]
    c = const * lcm
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    g = gcd(g, abs(int(c)) if c.denominator == 1 else 0)
    if g > 1:
        ints = [x // g for x in ints]
        c = c / g
    return tuple(Fraction(x) for x in ints), c, strict


def _prune(rows: list[Row]) -> list[Row] | None:
    """Drop dominated rows; return None if a constant row is violated."""
    best: dict[tuple, tuple[Fraction, bool]] = {}
    for coeffs, const, strict in rows:
        if all(x == 0 for x in coeffs):
            if const < 0 or (const == 0 and strict):
                return None
            continue
        key = coeffs
        cur = best.get(key)
        # smaller constant = stronger; on ties strict wins
        if cur is None or const < cur[0] or (const == cur[0] and strict and not cur[1]):
            best[key] = (const, strict)
    return [(k, c, s) for k, (c, s) in best.items()]


def _eliminate_last(rows: list[Row]) -> list[Row] | None:
    pos, neg, rest = [], [], []
    for coeffs, const, strict in rows:
        a = coeffs[-1]
        if a > 0:
            pos.append((coeffs, const, strict))
        elif a < 0:
            neg.append((coeffs, const, strict))
        else:
            rest.append((coeffs[:-1], const, strict))
    for cp, kp, sp in pos:
        ap = cp[-1]
        for cn, kn, sn in neg:
            an = -cn[-1]
            comb = tuple(an * x + ap * y for x, y in zip(cp[:-1], cn[:-1]))
            rest.append(_normalize(comb, an * kp + ap * kn, sp or sn))
    return _prune(rest)


def feasible_point(rows, nvars: int):
    """An exact rational point satisfying every row, or None.

    ``rows`` are (coeffs, const, strict) triples over ``nvars`` variables.
    """
    levels = []
    cur = _prune([_normalize(tuple(Fraction(x) for x in c), Fraction(k), s) for c, k, s in rows])
    if cur is None:
        return None
    for _ in range(nvars):
        levels.append(cur)
        cur = _eliminate_last(cur)
        if cur is None:
            return None

    # back-substitute, innermost variable last
    point: list[Fraction] = []
    for level in reversed(levels):
        lo = hi = None         # (value, strict)
        for coeffs, const, strict in level:
            a = coeffs[-1]
            if a == 0:
                continue
            val = -(const + sum(c * t for c, t in zip(coeffs[:-1], point))) / a
            if a > 0:
                if lo is None or val > lo[0] or (val == lo[0] and strict):
                    lo = (val, strict)
            else:
                if hi is None or val < hi[0] or (val == hi[0] and strict):
                    hi = (val, strict)
        if lo is None and hi is None:
            t = Fraction(0)
        elif hi is None:
            t = lo[0] + 1 if lo[1] else lo[0]
        elif lo is None:
            t = hi[0] - 1 if hi[1] else hi[0]
        else:
            if lo[0] > hi[0] or (lo[0] == hi[0] and (lo[1] or hi[1])):
                return None    # cannot happen after elimination succeeded
            t = lo[0] if lo[0] == hi[0] else (lo[0] + hi[0]) / 2
        point.append(t)
    point = tuple(point)
    assert _satisfies(rows, point), "back-substitution produced a bad witness"
    return point


def _satisfies(rows, point) -> bool:
    for coeffs, const, strict in rows:
        val = sum(Fraction(c) * t for c, t in zip(coeffs, point)) + Fraction(const)
        if val < 0 or (val == 0 and strict):
            return False
    return True


def is_feasible(rows, nvars: int) -> bool:
    return feasible_point(rows, nvars) is not None
