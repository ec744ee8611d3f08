"""Per-orthant special points and the 3^d census.

For a sign vector sigma with support J, the special point p_sigma maximizes
sum_{i in J} log(sigma_i x_i) over P intersected with the open orthant cone
of sigma.  We solve in the reduced space R^J with signs flipped so the cone
is the positive orthant:

1. exact strictly interior start ``t/2 * (1, ..., 1)``; the origin is
   interior, so this works for every proper LAB polytope;
2. float64 log-barrier path with damped Newton steps, mu halved from 1 to
   1e-12, to find the active facets;
3. equality-constrained Newton on the affine hull of the active facets in
   mpmath at the requested precision (exact rational solve when the active
   facets pin down a vertex);
4. the face of P containing the point in its relative interior is read off
   the active facets of P, then certified by a nonnegative least squares
   residual of the pseudo-inverse against the facet normals of that face.

A failed certification retries the barrier phase in mpmath with doubled
precision, up to three times.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import numpy as np
from scipy.optimize import nnls

from .errors import CertificationFailure, InvariantViolation, NotLocallyAntiBlocking, NotProper
from .exact import sign_of, sign_vectors, solve, support
from .lab import is_locally_anti_blocking
from .lattice import Face, FaceLattice
from .polytope import Polytope, is_proper

DEFAULT_PRECISION = 128
MU_START = 1.0
MU_STOP = 1e-12
ACTIVE_REL = 1e-8
KKT_REL = 1e-6
MAX_RETRIES = 3


def default_precision() -> int:
    return int(os.environ.get("KALAI_PRECISION_BITS", DEFAULT_PRECISION))


@dataclass
class SpecialRecord:
    sigma: tuple
    point: tuple  # mpmath.mpf coordinates
    face: Face
    kkt_residual: float  # relative to |p_check|
    active_slack: float  # largest slack among the facets declared active
    precision: int = DEFAULT_PRECISION
    retries: int = 0

    def pseudo_inverse(self) -> tuple:
        return tuple(1 / c if c != 0 else mpmath.mpf(0) for c in self.point)

    def to_dict(self, digits: int = 20) -> dict:
        return {
            "sigma": list(self.sigma),
            "point": [mpmath.nstr(c, digits) for c in self.point],
            "face": {"id": self.face.index, "dim": self.face.dim, "vertices": [k + 1 for k in self.face.vertex_ids()]},
            "kkt_residual": self.kkt_residual,
            "active_slack": self.active_slack,
            "precision": self.precision,
            "retries": self.retries,
        }


@dataclass
class SpecialCensus:
    records: dict = field(default_factory=dict)
    d: int = 0
    s: int = 0  # exact face count of P

    @property
    def total(self) -> bool:
        return len(self.records) == 3**self.d

    @property
    def injective(self) -> bool:
        return len({r.face.index for r in self.records.values()}) == len(self.records)

    @property
    def special_faces(self) -> set:
        return {r.face.index for r in self.records.values()}

    @property
    def bound(self) -> int:
        """Number of distinct special faces: a lower bound for s(P)."""
        return len(self.special_faces)

    def to_dict(self, digits: int = 20) -> dict:
        return {
            "records": [r.to_dict(digits) for r in self.records.values()],
            "total": self.total,
            "injective": self.injective,
            "bound": self.bound,
            "s": self.s,
        }


# --- reduced problem ------------------------------------------------------


def _reduced_system(P: Polytope, sigma: Sequence[int]) -> tuple:
    J = sorted(support(sigma))
    rows, rhs = [], []
    for a, b in P.facets:
        r = [Fraction(a[i] * sigma[i]) for i in J]
        if any(c != 0 for c in r):
            rows.append(r)
            rhs.append(Fraction(b))
    return J, rows, rhs


def _interior_start(rows, rhs) -> list:
    k = len(rows[0])
    t = min(b / sum(r) for r, b in zip(rows, rhs) if sum(r) > 0)
    return [t / 2] * k


def _barrier_float(rows, rhs, y0) -> np.ndarray:
    A = np.array([[float(c) for c in r] for r in rows])
    b = np.array([float(c) for c in rhs])
    y = np.array([float(c) for c in y0])

    def phi(y, mu):
        s = b - A @ y
        if np.any(y <= 0) or np.any(s <= 0):
            return -np.inf
        return np.sum(np.log(y)) + mu * np.sum(np.log(s))

    mu = MU_START
    while mu >= MU_STOP:
        for _ in range(100):
            s = b - A @ y
            g = 1 / y - mu * (A.T @ (1 / s))
            H = -np.diag(1 / y**2) - mu * (A.T * (1 / s**2)) @ A
            try:
                step = np.linalg.solve(H, -g)
            except np.linalg.LinAlgError:
                break
            dec = float(g @ step)
            if dec < 1e-20:
                break
            f0 = phi(y, mu)
            t = 1.0
            while t > 1e-16:
                cand = y + t * step
                if phi(cand, mu) >= f0 + 0.25 * t * dec:
                    break
                t *= 0.5
            else:
                break
            y = y + t * step
        mu *= 0.5
    return y


def _barrier_mp(rows, rhs, y0, prec: int) -> list:
    """The same barrier path in mpmath; used only on retries."""
    with mpmath.workprec(prec):
        A = mpmath.matrix([[mpmath.mpf(c.numerator) / c.denominator for c in r] for r in rows])
        b = [mpmath.mpf(c.numerator) / c.denominator for c in rhs]
        m, k = A.rows, A.cols
        y = [mpmath.mpf(c.numerator) / c.denominator if isinstance(c, Fraction) else mpmath.mpf(c) for c in y0]

        def slacks(y):
            return [b[f] - mpmath.fsum(A[f, j] * y[j] for j in range(k)) for f in range(m)]

        def phi(y, mu):
            s = slacks(y)
            if any(c <= 0 for c in y) or any(c <= 0 for c in s):
                return None
            return mpmath.fsum(mpmath.log(c) for c in y) + mu * mpmath.fsum(mpmath.log(c) for c in s)

        mu = mpmath.mpf(1)
        stop = mpmath.mpf(2) ** (-prec // 3)
        while mu >= stop:
            for _ in range(100):
                s = slacks(y)
                g = [1 / y[j] - mu * mpmath.fsum(A[f, j] / s[f] for f in range(m)) for j in range(k)]
                H = mpmath.matrix(k, k)
                for i in range(k):
                    for j in range(k):
                        H[i, j] = -mu * mpmath.fsum(A[f, i] * A[f, j] / s[f] ** 2 for f in range(m))
                    H[i, i] -= 1 / y[i] ** 2
                step = mpmath.lu_solve(H, mpmath.matrix([-c for c in g]))
                dec = mpmath.fsum(g[j] * step[j] for j in range(k))
                if dec < mpmath.mpf(2) ** (-prec + 20):
                    break
                f0 = phi(y, mu)
                t = mpmath.mpf(1)
                cand = None
                while t >= mpmath.mpf(2) ** (-prec):
                    trial = [y[j] + t * step[j] for j in range(k)]
                    f1 = phi(trial, mu)
                    if f1 is not None and f1 >= f0 + t * dec / 4:
                        cand = trial
                        break
                    t /= 2
                if cand is None:
                    break
                y = cand
            mu /= 2
        return [float(c) for c in y]


def _independent_rows(rows: list) -> list:
    chosen, echelon = [], []
    for idx, r in enumerate(rows):
        v = list(r)
        for piv, e in echelon:
            if v[piv] != 0:
                f = v[piv] / e[piv]
                v = [a - f * c for a, c in zip(v, e)]
        piv = next((c for c, x in enumerate(v) if x != 0), None)
        if piv is not None:
            echelon.append((piv, v))
            chosen.append(idx)
    return chosen


def _refine(rows, rhs, y_float, prec: int) -> list:
    """Equality-constrained Newton for max sum log y on the active facets."""
    scale = [max(1.0, abs(float(b))) for b in rhs]
    slack = [float(b) - sum(float(c) * y for c, y in zip(r, y_float)) for r, b in zip(rows, rhs)]
    active = [f for f in range(len(rows)) if slack[f] < ACTIVE_REL * (1 + scale[f])]
    act_rows = [rows[f] for f in active]
    keep = _independent_rows(act_rows)
    E = [act_rows[i] for i in keep]
    e = [rhs[active[i]] for i in keep]
    k = len(y_float)
    if len(E) == k:
        return [mpmath.mpf(c.numerator) / c.denominator for c in solve(E, e)]
    with mpmath.workprec(prec + 20):
        y = [mpmath.mpf(float(c)) for c in y_float]
        Em = [[mpmath.mpf(c.numerator) / c.denominator for c in r] for r in E]
        em = [mpmath.mpf(c.numerator) / c.denominator for c in e]
        n = k + len(E)
        tol = mpmath.mpf(2) ** (-prec)
        for _ in range(200):
            g = [1 / c for c in y]
            K = mpmath.matrix(n, n)
            rhs_v = mpmath.matrix(n, 1)
            for i in range(k):
                K[i, i] = -1 / y[i] ** 2
                rhs_v[i] = -g[i]
            for r in range(len(E)):
                for j in range(k):
                    K[k + r, j] = Em[r][j]
                    K[j, k + r] = Em[r][j]
                rhs_v[k + r] = em[r] - mpmath.fsum(Em[r][j] * y[j] for j in range(k))
            sol = mpmath.lu_solve(K, rhs_v)
            step = [sol[j] for j in range(k)]
            t = mpmath.mpf(1)
            while any(y[j] + t * step[j] <= 0 for j in range(k)):
                t /= 2
            y = [y[j] + t * step[j] for j in range(k)]
            if t == 1 and max(abs(s) / abs(c) for s, c in zip(step, y)) < tol:
                break
        return [+c for c in y]


def _certify(P: Polytope, L: FaceLattice, sigma, J, y, prec: int) -> SpecialRecord:
    d = P.dim
    with mpmath.workprec(prec):
        if any(c <= 0 for c in y):
            raise CertificationFailure(f"sigma={sigma}: refined point left the orthant")
        p = [mpmath.mpf(0)] * d
        for k, i in enumerate(J):
            p[i] = sigma[i] * y[k]
        bits = P.all_vertices
        active_slack = 0.0
        any_active = False
        for (a, b), inc in zip(P.facets, P.incidence):
            bm = mpmath.mpf(b.numerator) / b.denominator
            s = bm - mpmath.fsum(a[i] * p[i] for i in range(d))
            tol = ACTIVE_REL * (1 + abs(float(b)))
            if s < -tol:
                raise CertificationFailure(f"sigma={sigma}: point violates a facet by {float(-s)}")
            if s < tol:
                bits &= inc
                any_active = True
                active_slack = max(active_slack, abs(float(s)))
        if not any_active:
            bits = P.all_vertices
        try:
            face = L.face(bits)
        except KeyError:
            raise CertificationFailure(f"sigma={sigma}: active facets do not cut out a face") from None
        if face.bits == 0:
            raise CertificationFailure(f"sigma={sigma}: active facets have empty intersection")
        pinv = np.array([float(1 / c) if c != 0 else 0.0 for c in p])
        gens = [a for (a, _), inc in zip(P.facets, P.incidence) if (face.bits & inc) == face.bits]
        norm = float(np.linalg.norm(pinv))
        if gens:
            G = np.array([[float(c) for c in a] for a in gens]).T
            _, res = nnls(G, pinv)
        else:
            res = norm
        rel = float(res / norm) if norm > 0 else 0.0
        if rel > KKT_REL:
            raise CertificationFailure(f"sigma={sigma}: KKT residual {rel:.3g} exceeds {KKT_REL}")
        return SpecialRecord(tuple(sigma), tuple(p), face, rel, active_slack, prec)


def _check_hypotheses(P: Polytope) -> None:
    if not is_proper(P):
        raise NotProper("special points need the origin in the interior")
    if not is_locally_anti_blocking(P):
        raise NotLocallyAntiBlocking("special points are defined here for LAB polytopes")


def special_point(
    P: Polytope,
    sigma: Sequence[int],
    lattice: FaceLattice | None = None,
    precision: int | None = None,
    check: bool = True,
) -> SpecialRecord:
    """Locate and certify the special point of P in the orthant cone of sigma."""
    if check:
        _check_hypotheses(P)
    L = lattice if lattice is not None else FaceLattice(P)
    prec = precision or default_precision()
    sigma = tuple(int(c) for c in sigma)
    if len(sigma) != P.dim or any(c not in (-1, 0, 1) for c in sigma):
        raise ValueError(f"bad sign vector {sigma}")
    if not any(sigma):
        return SpecialRecord(sigma, tuple(mpmath.mpf(0) for _ in sigma), L.top, 0.0, 0.0, prec)
    J, rows, rhs = _reduced_system(P, sigma)
    if not rows or all(sum(r) <= 0 for r in rows):
        raise InvariantViolation("orthant section of a proper polytope is unbounded")
    y0 = _interior_start(rows, rhs)
    y = _barrier_float(rows, rhs, y0)
    last_error = None
    for attempt in range(MAX_RETRIES + 1):
        cur = prec * 2**attempt
        if attempt > 0:
            y = _barrier_mp(rows, rhs, y0, cur)
        try:
            refined = _refine(rows, rhs, list(y), cur)
            rec = _certify(P, L, sigma, J, refined, cur)
            rec.retries = attempt
            return rec
        except (CertificationFailure, ZeroDivisionError) as exc:
            last_error = exc
    raise CertificationFailure(f"sigma={sigma}: gave up after {MAX_RETRIES} retries ({last_error})")


def special_census(
    P: Polytope, lattice: FaceLattice | None = None, precision: int | None = None
) -> SpecialCensus:
    _check_hypotheses(P)
    L = lattice if lattice is not None else FaceLattice(P)
    census = SpecialCensus(d=P.dim, s=L.s)
    for sigma in sign_vectors(P.dim):
        census.records[sigma] = special_point(P, sigma, L, precision, check=False)
    if census.total and census.injective and census.bound > L.s:
        raise InvariantViolation("more special faces than faces")
    if L.s == 3**P.dim and census.injective and census.special_faces != {f.index for f in L.faces if f.bits}:
        raise InvariantViolation("minimizer census is not a bijection onto the non-empty faces")
    for r in census.records.values():
        if sign_of(r.point) != r.sigma:
            raise CertificationFailure(f"sign pattern of p_sigma differs from sigma={r.sigma}")
    return census


def verify_one_special_per_face(census: SpecialCensus) -> bool:
    return census.injective


def gradient_check(record: SpecialRecord, h: float = 1e-7) -> float:
    """Largest relative gap between a central-difference gradient of f_sigma and p_check."""
    p = record.point
    sigma = record.sigma
    worst = 0.0
    with mpmath.workprec(record.precision):

        def f(x):
            return mpmath.fsum(mpmath.log(s * c) for s, c in zip(sigma, x) if s != 0)

        for i, s in enumerate(sigma):
            if s == 0:
                continue
            step = mpmath.mpf(h) * abs(p[i])
            xp = list(p)
            xm = list(p)
            xp[i] += step
            xm[i] -= step
            fd = (f(xp) - f(xm)) / (2 * step)
            exact = 1 / p[i]
            worst = max(worst, float(abs(fd - exact) / abs(exact)))
    return worst
