"""Verification suites shared by the CLI and the acceptance tests.

Each suite returns a JSON-ready dict with an overall ``ok`` flag and one
boolean per check. Nothing in the output depends on timing or thread count.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .circle_core import orientation
from .cochains import Cochain, frac_str
from .cohomology import (
    CertificateFailure,
    class_norm_certificate_theta,
    delta_matrix,
    kernel,
    lambda_kernel,
    lambda_row,
    min_sup_norm_over_coboundaries,
    random_cochain,
    transfer_m,
)
from .comparison import PreconditionLambda, decompose
from .config_space import orbits
from .hyperbolic import (
    NearCoincidence,
    boundary,
    circle_distance,
    fixed_point_orientations,
    genus2_cycle,
    load_generators,
    octagon_group,
    pair,
    pair_or,
    perturbed,
    product_chain,
    reductions,
)
from .theta import (
    EXTREMAL,
    lambda_profile,
    sup_norm,
    theta_cochain,
    theta_values,
    verify_cocycle_theta,
)

SUITES = ("norm", "cocycle", "class-norm", "transfer", "decompose", "surface")


def _result(name: str, checks: dict, **extra) -> dict:
    checks = {k: bool(v) for k, v in checks.items()}
    return {"suite": name, "ok": all(checks.values()), "checks": checks, **extra}


def suite_norm(**_) -> dict:
    th = theta_cochain()
    cert = sup_norm(th)
    reduced = theta_values("reduced")
    full = theta_values("full")
    checks = {
        "types_enumerated_22500": cert.types_enumerated == 22500,
        "sup_norm_2/3": cert.sup_norm == Fraction(2, 3),
        "extremal_in_argmax": EXTREMAL in cert.argmax,
        "full_equals_reduced": bool(np.array_equal(4 * reduced, full)),
    }
    return _result("norm", checks, certificate=cert.to_json_obj())


def suite_cocycle(sample: int | None = None, seed: int = 42, jobs: int = 1, **_) -> dict:
    rep = verify_cocycle_theta(sample=sample, seed=seed, jobs=jobs)
    return _result("cocycle", {"coboundary_vanishes": rep.ok}, report=rep.to_json_obj())


def suite_class_norm(seed: int = 0, count: int = 100, **_) -> dict:
    try:
        cert = class_norm_certificate_theta(trials=count, seed=seed)
    except CertificateFailure as e:
        return _result("class-norm", {"certificate": False}, error=str(e))
    th = theta_cochain()
    lp = min_sup_norm_over_coboundaries(th)
    checks = {
        "faces_5_of_5": len(cert.face_evidence[str(EXTREMAL)]) == 5,
        "class_norm_2/3": cert.conclusion == Fraction(2, 3),
        "lp_optimum_2/3": lp == Fraction(2, 3),
    }
    return _result("class-norm", checks, certificate=cert.to_json_obj(), lp_optimum=frac_str(lp))


def suite_transfer(seed: int = 0, count: int = 50, **_) -> dict:
    left_inverse = True
    for q in (3, 4):
        n = len(orbits(q + 1, True).basis)
        for k in range(n):
            e = Cochain.basis_vector(q, k, "H")
            left_inverse &= transfer_m(e.with_mode("G")) == e
    th = theta_cochain()
    or1 = Cochain.from_function(2, lambda c: orientation(*c.x.ranks), "G")
    rng = random.Random(seed)
    contraction = True
    invariant = True
    for i in range(count):
        f = random_cochain(3 + i % 2, "G", rng)
        mf = transfer_m(f)
        contraction &= mf.sup_norm() <= f.sup_norm()
        invariant &= mf.is_invariant()
    checks = {
        "left_inverse_deg3_deg4": left_inverse,
        "m_theta_is_theta": transfer_m(th.with_mode("G")) == th,
        "m_or1_is_zero": transfer_m(or1).is_zero(),
        "norm_nonincreasing": contraction,
        "output_twisted_invariant": invariant,
    }
    return _result("transfer", checks, random_inputs=count)


def lambda_checks() -> dict:
    prof = lambda_profile(theta_cochain())
    l0, l1, l2, l3, l4 = prof.as_tuple()
    M3 = delta_matrix(3, "H").entries
    row = lambda_row("H")
    kills_image = all(sum(r * int(M3[i, j]) for i, r in enumerate(row)) == 0
                      for j in range(M3.shape[1]))
    cocycle_identity = True
    for f in kernel(4, "H"):
        p = lambda_profile(f)
        cocycle_identity &= p.l1 + p.l2 == p.l3 + p.l4 == 2 * p.l3
    checks = {
        "lambda0_zero": l0 == 0,
        "lambda3_eq_lambda4": l3 == l4,
        "lambda1_plus_lambda2_eq_2lambda3": l1 + l2 == 2 * l3,
        "functional_kills_image": kills_image,
        "kernel_cocycles_satisfy_identity": cocycle_identity,
    }
    return {"profile": prof.to_json_obj(), "checks": checks}


def suite_decompose(seed: int = 7, count: int = 100, **_) -> dict:
    lam = lambda_checks()
    rng = random.Random(seed)
    failures = []
    for i in range(count):
        f = random_cochain(3, "H", rng).coboundary()
        rep = decompose(f)
        if not (rep.final and rep.step1 and rep.step2 and rep.step3):
            failures.append({"seed_index": i, **rep.to_json_obj()})
    kern_ok = True
    basis = lambda_kernel()
    for f in basis:
        rep = decompose(f)
        kern_ok &= rep.final and rep.step1 and rep.step2 and rep.step3
    try:
        decompose(theta_cochain())
        theta_rejected = False
        theta_value = None
    except PreconditionLambda as e:
        theta_rejected = e.value == 1
        theta_value = frac_str(e.value)
    checks = {
        **lam["checks"],
        "coboundaries_decompose": not failures,
        "lambda_kernel_decomposes": kern_ok,
        "theta_rejected_functional_1": theta_rejected,
    }
    out = _result("decompose", checks, coboundaries=count, lambda_kernel_dim=len(basis),
                  lambda_profile=lam["profile"], theta_functional=theta_value)
    if failures:
        out["counterexample"] = failures[0]
    return out


def suite_surface(generators=None, **_) -> dict:
    g = load_generators(generators) if generators else octagon_group()
    z = genus2_cycle(g)
    zz = product_chain(z, z)
    th = theta_cochain()
    functional = lambda_profile(th).functional
    try:
        por = pair_or(z, g)
        pth = pair(th, zz, g)
        near = False
    except NearCoincidence:
        por, pth, near = None, None, True
    fixed = {}
    for label, xi in zip(("attracting", "repelling"), g.a1.fixed_points()):
        gx = g.with_base_point(xi)
        fixed[label] = {"pair_or": pair_or(z, gx), "fixed_point_orientations": fixed_point_orientations(gx)}
    stable = reductions(zz, perturbed(g, 1e-10, seed=1)) == reductions(zz, g)
    checks = {
        "relator_residual_le_1e-9": g.relator_residual <= 1e-9,
        "base_point_fixed_by_a1": circle_distance(g.a1.boundary(g.xi), g.xi) <= 1e-9,
        "z_is_cycle": len(boundary(z, g)) == 0,
        "no_near_coincidence": not near,
        "pair_or_4": por == 4,
        "fixed_point_orientations_all_plus_1": all(v == 1 for d in fixed.values() for v in d["fixed_point_orientations"]),
        "pair_theta_16": pth == 16,
        "pair_theta_eq_16_functional": pth == 16 * functional,
        "z_times_z_216_terms": len(zz) == 216,
        "perturbation_stable": stable,
    }
    return _result("surface", checks,
                   pair_or=por, pair_theta=None if pth is None else frac_str(pth),
                   lambda_functional=frac_str(functional), fixed_points=fixed)


RUNNERS = {
    "norm": suite_norm,
    "cocycle": suite_cocycle,
    "class-norm": suite_class_norm,
    "transfer": suite_transfer,
    "decompose": suite_decompose,
    "surface": suite_surface,
}


def run(name: str, **opts) -> dict:
    if name == "all":
        parts = [RUNNERS[n](**_opts_for(opts)) for n in SUITES]
        return {"suite": "all", "ok": all(p["ok"] for p in parts), "suites": parts}
    if name not in RUNNERS:
        raise KeyError(name)
    return RUNNERS[name](**_opts_for(opts))


def _opts_for(opts: dict) -> dict:
    # drop unset options so each suite keeps its own defaults
    return {k: v for k, v in opts.items() if v is not None}
