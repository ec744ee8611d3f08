"""Exact rational scalars, vectors, sign vectors and coordinate index sets.

Scalars are :class:`fractions.Fraction` values, which are always stored
gcd-reduced with a positive denominator, so equality and hashing are
structural.  A vector is a plain tuple of fractions; a sign vector is a tuple
over ``{-1, 0, 1}``; an index set is a ``frozenset`` of 0-based coordinates.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Sequence

Rat = Fraction
Vector = tuple  # tuple[Fraction, ...]
SignVector = tuple  # tuple[int, ...]
IndexSet = frozenset  # frozenset[int], 0-based


def rat(x) -> Fraction:
    """Coerce ints, fractions and rational strings ("a" or "a/b") to Fraction.

    Floats are rejected so that no binary rounding sneaks into exact data.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rat(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def vec(xs: Iterable) -> tuple:
    return tuple(rat(x) for x in xs)


def format_rat(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rat(s: str) -> Fraction:
    s = s.strip()
    if "/" in s:
        num, den = s.split("/")
        den_i = int(den)
        if den_i <= 0:
            raise ValueError(f"denominator must be positive in {s!r}")
        return Fraction(int(num), den_i)
    return Fraction(int(s))


def _sgn(q) -> int:
    return (q > 0) - (q < 0)


def sign_of(x: Sequence) -> tuple:
    return tuple(_sgn(c) for c in x)


def pseudo_inverse(p: Sequence) -> tuple:
    """Componentwise reciprocal, leaving zero coordinates at zero."""
    return tuple(1 / c if c != 0 else c * 0 for c in p)


def project_to(x: Sequence, J: Iterable[int]) -> tuple:
    J = frozenset(J)
    zero = Fraction(0)
    return tuple(c if i in J else zero for i, c in enumerate(x))


def support(sigma: Sequence[int]) -> frozenset:
    return frozenset(i for i, s in enumerate(sigma) if s != 0)


def sign_vectors(d: int) -> Iterator[tuple]:
    """All of {-1,0,+1}^d in ternary counting order, last coordinate fastest."""
    return itertools.product((-1, 0, 1), repeat=d)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def primitive_integer(v: Sequence) -> tuple:
    """Scale a rational vector by a positive factor to a coprime integer vector."""
    den = 1
    for c in v:
        den = lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in v]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if g == 0:
        return tuple(ints)
    return tuple(c // g for c in ints)


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank of a rational matrix by fraction-free Gaussian elimination."""
    m = [[Fraction(c) for c in r] for r in rows]
    if not m:
        return 0
    n_cols = len(m[0])
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            if m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull; -1 for the empty set."""
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def det(m: Sequence[Sequence]) -> Fraction:
    a = [[Fraction(c) for c in r] for r in m]
    n = len(a)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            result = -result
        result *= a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / a[c][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return result


def solve(m: Sequence[Sequence], b: Sequence) -> tuple:
    """Solve a square nonsingular rational system exactly."""
    n = len(m)
    a = [[Fraction(c) for c in r] + [Fraction(bi)] for r, bi in zip(m, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        a[c], a[piv] = a[piv], a[c]
        p = a[c][c]
        a[c] = [x / p for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(r[n] for r in a)
