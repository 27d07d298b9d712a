"""Cochain spaces over orbit classes, coboundary matrices and the transfer map.

Coordinates of a cochain are its values at the representatives of the
non-forced orbits. The coboundary matrix has integer entries: row r is the
value of delta(basis vector) at the r-th representative one degree up.
All linear algebra is exact (Python integers and Fractions).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .circle_core import Configuration
from .cochains import Cochain
from .config_space import MAX_T, OrbitClass, SizeLimit, orbit_classes, orbits, type_space
from .theta import (
    EXTREMAL,
    LAMBDA_REFERENCE,
    NormCertificate,
    face_evidence,
    sup_norm,
    theta_cochain,
)

__all__ = [
    "CochainVector",
    "CoboundaryMatrix",
    "CertificateFailure",
    "SolverNotBuilt",
    "basis",
    "delta_matrix",
    "kernel",
    "rref",
    "transfer_m",
    "random_cochain",
    "lambda_row",
    "lambda_kernel",
    "class_norm_certificate_theta",
    "min_sup_norm_over_coboundaries",
]

CochainVector = Cochain

# the exact LP is an optional feature; flip to False to build without it
LP_ENABLED = True


class CertificateFailure(RuntimeError):
    pass


class SolverNotBuilt(RuntimeError):
    pass


def _mode(mode: str) -> bool:
    if mode not in ("H", "G"):
        raise ValueError(f"unknown invariance mode {mode!r}")
    return mode == "H"


def basis(q: int, mode: str = "H") -> list[OrbitClass]:
    """Non-forced orbits of (q+1)-tuples, ordered by representative index."""
    if q + 1 > MAX_T:
        raise SizeLimit(f"degree {q} needs {q + 1}-tuples")
    return [oc for oc in orbit_classes(q + 1, _mode(mode)) if not oc.forced_zero]


@dataclass
class CoboundaryMatrix:
    degree: int
    mode: str
    entries: np.ndarray  # int64, shape (dim q+1, dim q)

    @property
    def shape(self):
        return self.entries.shape

    def apply(self, coeffs) -> list[Fraction]:
        coeffs = [Fraction(c) for c in coeffs]
        return [sum((int(a) * c for a, c in zip(row, coeffs) if a), Fraction(0))
                for row in self.entries]

    def rows(self) -> list[list[int]]:
        return self.entries.tolist()


def delta_matrix(q: int, mode: str = "H") -> CoboundaryMatrix:
    """Matrix of delta from degree q to degree q+1 in the orbit bases."""
    if q + 2 > MAX_T:
        raise SizeLimit(f"delta on degree {q} needs {q + 2}-tuples")
    tw = _mode(mode)
    lo, hi = orbits(q + 1, tw), orbits(q + 2, tw)
    upper = type_space(q + 2)
    pos = lo.basis_position()
    rows = hi.reps[hi.basis]
    ix, iy = np.divmod(rows.astype(np.int64), upper.P)
    M = np.zeros((len(rows), len(lo.basis)), dtype=np.int64)
    r = np.arange(len(rows))
    for i in range(upper.t):
        face = upper.face_index(i, ix, iy)
        col, sgn = pos[face], lo.sign[face].astype(np.int64)
        keep = col >= 0
        np.add.at(M, (r[keep], col[keep]), (-1) ** i * sgn[keep])
    return CoboundaryMatrix(q, mode, M)


def rref(rows) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q with first-nonzero pivoting, left to right."""
    A = [[Fraction(v) for v in row] for row in rows]
    ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        pv = A[r][c]
        A[r] = [v / pv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def nullspace(rows, ncols: int) -> list[list[Fraction]]:
    R, pivots = rref(rows) if len(rows) else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[fc]
        out.append(v)
    return out


def kernel(q: int, mode: str = "H") -> list[Cochain]:
    """Basis of the degree-q cocycles (exact), as cochains."""
    M = delta_matrix(q, mode)
    vecs = nullspace(M.rows(), M.shape[1])
    return [Cochain.from_coeffs(q, v, mode) for v in vecs]


def _dihedral(ts, ix, iy):
    # the eight elements (reflect x?, reflect y?) after an optional swap, with twisted sign
    P = ts.P
    for swap in (False, True):
        a, b = (iy, ix) if swap else (ix, iy)
        for rx in (False, True):
            for ry in (False, True):
                u = ts.refl[a] if rx else a
                v = ts.refl[b] if ry else b
                yield u.astype(np.int64) * P + v, (-1) ** (rx + ry)


def transfer_m(f: Cochain) -> Cochain:
    """Average of sign(g) f(g z) over reflections of either factor and the swap (1/8 prefactor)."""
    ts = f.space
    ix, iy = ts.all_indices()
    total = np.zeros(ts.N, dtype=np.int64)
    for img, s in _dihedral(ts, ix, iy):
        total += s * f.num[img]
    return Cochain(f.degree, total, 8 * f.den, "H")


def random_cochain(q: int, mode: str = "H", rng: random.Random | None = None,
                   bound: int = 5, max_den: int = 6) -> Cochain:
    """Seeded random rational cochain in the orbit basis."""
    rng = rng or random.Random(0)
    n = len(orbits(q + 1, _mode(mode)).basis)
    coeffs = [Fraction(rng.randint(-bound, bound), rng.randint(1, max_den)) for _ in range(n)]
    return Cochain.from_coeffs(q, coeffs, mode)


def lambda_row(mode: str = "H") -> list[Fraction]:
    """The functional 2(l1+l2)+l3+l4 in the degree-4 orbit coordinates."""
    orb = orbits(5, _mode(mode))
    ts = type_space(5)
    pos = orb.basis_position()
    weights = (0, 2, 2, 1, 1)
    row = [Fraction(0)] * len(orb.basis)
    for (c, s), w in zip(LAMBDA_REFERENCE, weights):
        idx = ts.config_index(c)
        if w and pos[idx] >= 0:
            row[pos[idx]] += w * s * int(orb.sign[idx])
    return row


def lambda_kernel() -> list[Cochain]:
    """Basis of the degree-4 twisted cocycles on which the lambda functional vanishes."""
    M = delta_matrix(4, "H")
    rows = M.rows() + [lambda_row("H")]
    return [Cochain.from_coeffs(4, v, "H") for v in nullspace(rows, M.shape[1])]


def class_norm_certificate_theta(extremal: Configuration = EXTREMAL, trials: int = 100,
                                 seed: int = 0) -> NormCertificate:
    """Upper bound from sup_norm(Theta), lower bound from faces of the extremal tuple.

    Every face of ``extremal`` must satisfy the crossing criterion, so delta b
    vanishes there for every twisted 3-cochain b; the random trials confirm
    |Theta + delta b|(extremal) = |Theta(extremal)|.
    """
    th = theta_cochain()
    cert = sup_norm(th)
    faces = face_evidence(extremal)
    if len(faces) != extremal.t:
        missing = [i for i in range(extremal.t) if i not in faces]
        raise CertificateFailure(f"faces {missing} of {extremal} fail the crossing criterion")
    target = abs(th(extremal))
    if target != cert.sup_norm:
        raise CertificateFailure(f"|Theta({extremal})| = {target}, not the sup norm {cert.sup_norm}")
    rng = random.Random(seed)
    idx = th.space.config_index(extremal)
    for _ in range(trials):
        b = random_cochain(3, "H", rng)
        db = b.coboundary_at([idx])[0]
        val = abs(th.value_at_index(idx) + Fraction(int(db), b.den))
        if val != target:
            raise CertificateFailure(f"|Theta + delta b|({extremal}) = {val} for b = {b.coeffs()}")
    cert.face_evidence = {str(extremal): faces}
    cert.conclusion = target
    return cert


# exact LP

def _simplex(A, b, c):
    """Minimize c.x subject to A x = b, x >= 0 (b >= 0), two-phase with Bland's rule.

    Returns (optimum, x) or raises ValueError if infeasible/unbounded.
    """
    m, n = len(A), len(A[0])
    # phase 1: artificials n..n+m-1
    T = [list(A[i]) + [Fraction(int(i == k)) for k in range(m)] + [b[i]] for i in range(m)]
    basic = list(range(n, n + m))

    def pivot(r, col):
        pv = T[r][col]
        T[r] = [v / pv for v in T[r]]
        for i in range(m):
            if i != r and T[i][col]:
                f = T[i][col]
                T[i] = [a - f * bb for a, bb in zip(T[i], T[r])]
        basic[r] = col

    def run(cost, allowed):
        while True:
            # reduced costs
            red = {j: cost[j] - sum(cost[basic[i]] * T[i][j] for i in range(m)) for j in allowed}
            enter = next((j for j in sorted(allowed) if red[j] < 0), None)
            if enter is None:
                return
            ratios = [(T[i][-1] / T[i][enter], basic[i], i) for i in range(m) if T[i][enter] > 0]
            if not ratios:
                raise ValueError("LP unbounded")
            best = min(r[0] for r in ratios)
            _, _, row = min(r for r in ratios if r[0] == best)
            pivot(row, enter)

    cost1 = [Fraction(0)] * n + [Fraction(1)] * m
    run(cost1, list(range(n + m)))
    if sum(T[i][-1] for i in range(m) if basic[i] >= n) != 0:
        raise ValueError("LP infeasible")
    # drive remaining artificials out of the basis
    for i in range(m):
        if basic[i] >= n:
            col = next((j for j in range(n) if T[i][j] != 0), None)
            if col is not None:
                pivot(i, col)
    cost2 = list(c) + [Fraction(0)] * m
    run(cost2, list(range(n)))
    x = [Fraction(0)] * n
    for i in range(m):
        if basic[i] < n:
            x[basic[i]] = T[i][-1]
    return sum(ci * xi for ci, xi in zip(c, x)), x


def min_sup_norm_over_coboundaries(f: Cochain) -> Fraction:
    """min over twisted 3-cochains b of ||f + delta b||, solved as an exact Chebyshev LP.

    |value| is constant on orbits, so one pair of constraints per non-forced
    degree-4 orbit suffices.
    """
    if not LP_ENABLED:
        raise SolverNotBuilt("the exact LP feature is disabled")
    if f.degree != 4 or f.mode != "H":
        raise ValueError("expects an H-twisted degree-4 cochain")
    M = delta_matrix(3, "H").rows()
    fc = f.coeffs()
    k = len(M[0]) if M else 0
    # variables: b+ (k), b- (k), t, slacks (2 per row)
    rows, rhs = [], []
    nrow = len(fc)
    nvar = 2 * k + 1 + 2 * nrow
    for r in range(nrow):
        for sgn in (1, -1):
            # sgn*(f_r + M_r b) - t + s = 0  ->  sgn*M_r b - t + s = -sgn*f_r
            row = [Fraction(0)] * nvar
            for j in range(k):
                row[j] = Fraction(sgn * M[r][j])
                row[k + j] = Fraction(-sgn * M[r][j])
            row[2 * k] = Fraction(-1)
            row[2 * k + 1 + 2 * r + (sgn < 0)] = Fraction(1)
            b = -sgn * fc[r]
            if b < 0:
                row = [-v for v in row]
                b = -b
            rows.append(row)
            rhs.append(b)
    cost = [Fraction(0)] * nvar
    cost[2 * k] = Fraction(1)
    opt, _ = _simplex(rows, rhs, cost)
    return opt
