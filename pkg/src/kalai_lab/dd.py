"""Double description method over the integers, and an exact feasibility LP.

The only cone shape we ever need is a pointed H-cone ``{y : <row, y> <= 0}``.
Both directions of the vertex/facet conversion reduce to enumerating its
extreme rays (see :mod:`kalai_lab.polytope`).  All arithmetic is on Python
integers; rays are kept primitive so coordinates stay small.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .exact import primitive_integer, solve


def _primitive(v: list) -> tuple:
    g = 0
    for c in v:
        g = gcd(g, c)
    if g > 1:
        return tuple(c // g for c in v)
    return tuple(v)


def _idot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def _initial_basis(rows: list, n: int) -> list:
    """Greedily pick n linearly independent rows, in the given order."""
    chosen: list = []
    echelon: list = []  # reduced copies, for the independence test
    for idx, r in enumerate(rows):
        v = [Fraction(c) for c in r]
        for piv_col, e in echelon:
            if v[piv_col] != 0:
                f = v[piv_col] / e[piv_col]
                v = [a - f * b for a, b in zip(v, e)]
        piv = next((c for c in range(n) if v[c] != 0), None)
        if piv is None:
            continue
        echelon.append((piv, v))
        chosen.append(idx)
        if len(chosen) == n:
            break
    return chosen


class NotPointed(ValueError):
    """The constraint matrix has rank below the ambient dimension."""


def extreme_rays(rows: Sequence[Sequence[int]], n: int) -> list[tuple[tuple, int]]:
    """Extreme rays of the pointed cone {y in R^n : <row, y> <= 0 for all rows}.

    Returns a list of ``(ray, zero_set)`` pairs; ``ray`` is a primitive
    integer tuple and ``zero_set`` a bitmask over the indices of ``rows``
    whose constraint is tight on the ray.  Raises :class:`NotPointed` when
    the rows do not have full column rank.
    """
    rows = [tuple(int(c) for c in r) for r in rows]
    order = sorted(range(len(rows)), key=lambda i: rows[i])
    basis_pos = _initial_basis([rows[i] for i in order], n)
    if len(basis_pos) < n:
        raise NotPointed(f"constraint rank {len(basis_pos)} < {n}")
    basis = [order[p] for p in basis_pos]

    rays: list[tuple] = []
    zeros: list[int] = []
    B = [rows[i] for i in basis]
    for j in range(n):
        rhs = [0] * n
        rhs[j] = -1
        r = primitive_integer(solve(B, rhs))
        rays.append(r)
        zeros.append(sum(1 << basis[k] for k in range(n) if k != j))

    in_basis = set(basis)
    for h_idx in order:
        if h_idx in in_basis:
            continue
        h = rows[h_idx]
        bit = 1 << h_idx
        vals = [_idot(h, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        if not pos:
            zeros = [z | bit if v == 0 else z for z, v in zip(zeros, vals)]
            continue
        neg = [k for k, v in enumerate(vals) if v < 0]
        new_rays: list[tuple] = []
        new_zeros: list[int] = []
        for p in pos:
            zp = zeros[p]
            for q in neg:
                z = zp & zeros[q]
                if z.bit_count() < n - 2:
                    continue
                adjacent = True
                for t, zt in enumerate(zeros):
                    if t != p and t != q and (z & zt) == z:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[p], vals[q]
                combo = [vp * a - vq * b for a, b in zip(rays[q], rays[p])]
                new_rays.append(_primitive(combo))
                new_zeros.append(z | bit)
        kept_rays = []
        kept_zeros = []
        for r, z, v in zip(rays, zeros, vals):
            if v < 0:
                kept_rays.append(r)
                kept_zeros.append(z)
            elif v == 0:
                kept_rays.append(r)
                kept_zeros.append(z | bit)
        rays = kept_rays + new_rays
        zeros = kept_zeros + new_zeros
    return list(zip(rays, zeros))


def nonneg_solution(A: Sequence[Sequence], b: Sequence) -> tuple | None:
    """Exact phase-one simplex: find lambda >= 0 with A lambda = b, or None.

    Bland's rule guarantees termination.  Used for cone-membership tests
    (is ``b`` a nonnegative combination of the columns of ``A``).
    """
    m = len(A)
    k = len(A[0]) if m else 0
    if m == 0:
        return tuple(Fraction(0) for _ in range(k))
    tab = []
    for i in range(m):
        row = [Fraction(c) for c in A[i]] + [Fraction(1) if j == i else Fraction(0) for j in range(m)]
        rhs = Fraction(b[i])
        if rhs < 0:
            row = [-c for c in row[:k]] + row[k:]
            rhs = -rhs
        tab.append(row + [rhs])
    basis = [k + i for i in range(m)]
    n_var = k + m
    # objective: minimise sum of artificials -> reduced costs
    cost = [Fraction(0)] * k + [Fraction(1)] * m
    while True:
        red = []
        for j in range(n_var):
            c = cost[j] - sum(cost[basis[i]] * tab[i][j] for i in range(m))
            red.append(c)
        enter = next((j for j in range(n_var) if red[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                ratio = tab[i][-1] / tab[i][enter]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # cannot happen for a bounded phase-one problem
            break
        r = best[1]
        piv = tab[r][enter]
        tab[r] = [x / piv for x in tab[r]]
        for i in range(m):
            if i != r and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [x - f * y for x, y in zip(tab[i], tab[r])]
        basis[r] = enter
    x = [Fraction(0)] * n_var
    for i, j in enumerate(basis):
        x[j] = tab[i][-1]
    if any(x[k + i] != 0 for i in range(m)):
        return None
    return tuple(x[:k])


def in_cone(b: Sequence, generators: Sequence[Sequence]) -> bool:
    """Exact test whether ``b`` lies in the cone spanned by ``generators``."""
    if not generators:
        return all(c == 0 for c in b)
    A = [[g[i] for g in generators] for i in range(len(b))]
    return nonneg_solution(A, b) is not None
