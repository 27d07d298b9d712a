"""The cocycle Theta = Alt(Or_1 cup Or_2) on 5-tuples of points of S^1 x S^1.

Two evaluation routes are provided: the 120-term alternation and the
30-term rotation formula. Exhaustive work over all 22 500 types goes
through the batch kernels, which return 30*Theta as integers.
"""

from __future__ import annotations

import contextlib
import functools
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import kernels
from .circle_core import Configuration, orientation, perm_sign
from .cochains import Cochain, frac_str
from .config_space import lemma7_applies, type_space

__all__ = [
    "EXTREMAL",
    "LAMBDA_REFERENCE",
    "LambdaProfile",
    "NormCertificate",
    "CocycleReport",
    "theta_full",
    "theta_reduced",
    "theta_values",
    "theta_cochain",
    "lambda_profile",
    "lambda_functional",
    "sup_norm",
    "verify_cocycle_theta",
    "inject_fault",
]

EXTREMAL = Configuration.of((0, 1, 2, 3, 4), (0, 2, 4, 1, 3))

# reference tuples with three distinct points per factor; lambda_2 is read with a minus sign
LAMBDA_REFERENCE = (
    (Configuration.of((0, 0, 1, 1, 2), (0, 1, 0, 1, 2)), +1),
    (Configuration.of((0, 1, 2, 2, 2), (0, 0, 0, 1, 2)), +1),
    (Configuration.of((0, 1, 1, 2, 2), (0, 0, 1, 1, 2)), -1),
    (Configuration.of((0, 1, 1, 1, 2), (0, 0, 1, 2, 2)), +1),
    (Configuration.of((0, 0, 1, 2, 2), (0, 1, 1, 1, 2)), +1),
)

_PERMS5 = [(p, perm_sign(p)) for p in itertools.permutations(range(5))]


def _check5(c: Configuration) -> None:
    if c.t != 5:
        raise ValueError(f"Theta is evaluated on 5-tuples, got length {c.t}")


def theta_full(c: Configuration) -> Fraction:
    """1/120 sum over Sym(5) of sign * Or(x_s0, x_s1, x_s2) * Or(y_s2, y_s3, y_s4)."""
    _check5(c)
    x, y = c.x.ranks, c.y.ranks
    total = 0
    for p, s in _PERMS5:
        ox = orientation(x[p[0]], x[p[1]], x[p[2]])
        if ox:
            total += s * ox * orientation(y[p[2]], y[p[3]], y[p[4]])
    return Fraction(total, 120)


def theta_reduced(c: Configuration) -> Fraction:
    """The 30-term route: five rotations times six signed bracket products."""
    _check5(c)
    x, y = c.x.ranks, c.y.ranks
    total = 0
    for k in range(5):
        tau = [(i + k) % 5 for i in range(5)]
        for s, xt, yt in _terms():
            total += (s * orientation(*(x[tau[i]] for i in xt))
                      * orientation(*(y[tau[i]] for i in yt)))
    return Fraction(total, 30)


# fault injection: a corrupted copy of the bracket table, or None

_fault_terms = None


def _terms():
    return _fault_terms if _fault_terms is not None else kernels.fallback.REDUCED_TERMS


@contextlib.contextmanager
def inject_fault(term: int = 0):
    """Flip the sign of one bracketed product in the 30-term route (negative controls only)."""
    global _fault_terms
    terms = list(kernels.fallback.REDUCED_TERMS)
    s, xt, yt = terms[term]
    terms[term] = (-s, xt, yt)
    _fault_terms = tuple(terms)
    try:
        yield
    finally:
        _fault_terms = None


def theta_values(route: str = "reduced") -> np.ndarray:
    """Integer numerators of Theta over every 5-tuple type (over 30, or 120 for the full route)."""
    ts = type_space(5)
    ix, iy = ts.all_indices()
    X = ts.ranks[ix].astype(np.int64)
    Y = ts.ranks[iy].astype(np.int64)
    if route == "full":
        return kernels.theta120_batch(X, Y)
    if route != "reduced":
        raise ValueError(f"unknown route {route!r}")
    if _fault_terms is not None:
        return kernels.fallback.theta30_batch(X, Y, terms=_fault_terms)
    return kernels.theta30_batch(X, Y)


@functools.lru_cache(maxsize=None)
def _theta_cochain() -> Cochain:
    return Cochain(4, theta_values("reduced"), 30, "H")


def theta_cochain() -> Cochain:
    """Theta as an exact H-twisted 4-cochain."""
    if _fault_terms is not None:
        return Cochain(4, theta_values("reduced"), 30, "H")
    return _theta_cochain()


@dataclass(frozen=True)
class LambdaProfile:
    l0: Fraction
    l1: Fraction
    l2: Fraction
    l3: Fraction
    l4: Fraction

    def as_tuple(self) -> tuple[Fraction, ...]:
        return (self.l0, self.l1, self.l2, self.l3, self.l4)

    @property
    def functional(self) -> Fraction:
        return 2 * (self.l1 + self.l2) + self.l3 + self.l4

    def to_json_obj(self) -> dict:
        d = {f"lambda{i}": frac_str(v) for i, v in enumerate(self.as_tuple())}
        d["functional"] = frac_str(self.functional)
        return d


def lambda_profile(f: Callable[[Configuration], Fraction]) -> LambdaProfile:
    """Read lambda_0..lambda_4 off f at the reference tuples (both Or factors are +1 there)."""
    return LambdaProfile(*(s * Fraction(f(c)) for c, s in LAMBDA_REFERENCE))


def lambda_functional(f: Callable[[Configuration], Fraction]) -> Fraction:
    """2(l1 + l2) + l3 + l4."""
    return lambda_profile(f).functional


@dataclass
class NormCertificate:
    cochain: str
    sup_norm: Fraction
    types_enumerated: int
    argmax: list[Configuration] = field(default_factory=list)
    face_evidence: dict[str, list[int]] | None = None
    conclusion: Fraction | None = None

    def to_json_obj(self) -> dict:
        d = {
            "cochain": self.cochain,
            "sup_norm": frac_str(self.sup_norm),
            "types_enumerated": self.types_enumerated,
        }
        if self.sup_norm != 0:
            d["argmax"] = [{"X": list(c.x.ranks), "Y": list(c.y.ranks)} for c in self.argmax]
        if self.face_evidence is not None:
            d["face_evidence"] = self.face_evidence
        if self.conclusion is not None:
            d["class_norm"] = frac_str(self.conclusion)
        return d


def sup_norm(f, name: str = "theta") -> NormCertificate:
    """Exact max of |f| over every 5-tuple type, with the complete argmax list.

    ``f`` is a degree-4 Cochain or any callable on 5-tuple Configurations.
    """
    ts = type_space(5)
    if isinstance(f, Cochain):
        if f.degree != 4:
            raise ValueError("sup_norm expects a degree-4 cochain")
        absnum = np.abs(f.num)
        best = int(absnum.max())
        sup = Fraction(best, f.den)
        hits = np.flatnonzero(absnum == best) if best else []
    else:
        vals = [abs(Fraction(f(ts.config(i)))) for i in range(ts.N)]
        sup = max(vals)
        hits = [i for i, v in enumerate(vals) if v == sup] if sup else []
    return NormCertificate(name, sup, ts.N, [ts.config(i) for i in hits])


def face_evidence(c: Configuration) -> list[int]:
    """Indices of faces of c on which the crossing criterion forces every twisted 3-cochain to vanish."""
    return [i for i in range(c.t) if lemma7_applies(c.face(i))]


@dataclass
class CocycleReport:
    ok: bool
    checked: int
    counterexample: Configuration | None = None
    value: Fraction | None = None
    sampled: bool = False

    def to_json_obj(self) -> dict:
        d = {"cochain": "theta", "check": "coboundary_vanishes", "ok": self.ok,
             "types_checked": self.checked, "sampled": self.sampled}
        if self.counterexample is not None:
            d["counterexample"] = str(self.counterexample)
            d["value"] = frac_str(self.value)
        return d


def _dtheta_chunk(idx: np.ndarray) -> np.ndarray:
    ts = type_space(6)
    ix, iy = np.divmod(idx, ts.P)
    return kernels.dtheta30_batch(ts.ranks[ix].astype(np.int64), ts.ranks[iy].astype(np.int64))


def verify_cocycle_theta(sample: int | None = None, seed: int = 42, jobs: int = 1,
                         chunk: int = 1 << 16) -> CocycleReport:
    """Check delta Theta = 0 on every 6-tuple type, or on a seeded sample of them.

    Chunks run on a thread pool; the compiled kernel releases the GIL.
    """
    ts = type_space(6)
    if sample is not None and sample < ts.N:
        rng = np.random.default_rng(seed)
        idx = np.sort(rng.choice(ts.N, size=sample, replace=False))
    else:
        idx = np.arange(ts.N, dtype=np.int64)
        sample = None
    parts = [idx[i:i + chunk] for i in range(0, len(idx), chunk)]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_dtheta_chunk, parts))
    else:
        results = [_dtheta_chunk(p) for p in parts]
    vals = np.concatenate(results) if results else np.zeros(0, dtype=np.int64)
    bad = np.flatnonzero(vals)
    if bad.size:
        k = int(bad[0])
        return CocycleReport(False, len(idx), ts.config(int(idx[k])), Fraction(int(vals[k]), 30),
                             sampled=sample is not None)
    return CocycleReport(True, len(idx), sampled=sample is not None)
