import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import configurations
from thetanorm.circle_core import Configuration, perm_sign
from thetanorm.cochains import Cochain
from thetanorm.config_space import counts, group_elements
from thetanorm.theta import (
    EXTREMAL,
    LAMBDA_REFERENCE,
    inject_fault,
    lambda_functional,
    lambda_profile,
    sup_norm,
    theta_cochain,
    theta_full,
    theta_reduced,
    theta_values,
    verify_cocycle_theta,
)


@given(configurations(t=5))
def test_full_equals_reduced(c):
    assert theta_full(c) == theta_reduced(c)


def test_routes_agree_exhaustively():
    assert np.array_equal(4 * theta_values("reduced"), theta_values("full"))
    with pytest.raises(ValueError):
        theta_values("other")


def test_theta_examples():
    assert theta_full(EXTREMAL) == Fraction(2, 3)
    assert theta_full(Configuration.of((0, 1, 2, 3, 4), (0, 3, 1, 4, 2))) == Fraction(-2, 3)
    assert theta_full(LAMBDA_REFERENCE[3][0]) == Fraction(1, 6)
    assert theta_full(Configuration.of((0,) * 5, (0,) * 5)) == 0
    with pytest.raises(ValueError):
        theta_full(Configuration.of((0, 1, 2, 3), (0, 1, 2, 3)))


def test_alternating_on_samples():
    rng = random.Random(5)
    th = theta_cochain()
    for _ in range(100):
        c = th.space.config(rng.randrange(th.space.N))
        v = th(c)
        for p in itertools.permutations(range(5)):
            assert th(c.permuted(p)) == perm_sign(p) * v


@settings(max_examples=40)
@given(configurations(t=5))
def test_twisted_invariance(c):
    th = theta_cochain()
    for g in group_elements(5, True):
        assert th(g.apply(c)) == g.net_sign(True) * th(c)


@given(configurations(t=5))
def test_vanishes_with_few_distinct_points(c):
    if min(counts(c)) <= 2:
        assert theta_full(c) == 0


def test_denominators_divide_30():
    th = theta_cochain()
    assert 30 % th.den == 0
    assert th.den == 6


def test_lambda_profile():
    prof = lambda_profile(theta_cochain())
    assert prof.as_tuple() == (0, Fraction(1, 6), Fraction(1, 6), Fraction(1, 6), Fraction(1, 6))
    assert prof.functional == 1
    assert lambda_functional(theta_full) == 1
    assert prof.to_json_obj()["functional"] == "1/1"


def test_sup_norm_certificate():
    cert = sup_norm(theta_cochain())
    assert cert.sup_norm == Fraction(2, 3)
    assert cert.types_enumerated == 22500
    assert EXTREMAL in cert.argmax
    assert len(cert.argmax) == 48
    obj = cert.to_json_obj()
    assert obj["sup_norm"] == "2/3" and len(obj["argmax"]) == 48


def test_sup_norm_of_zero_omits_argmax():
    cert = sup_norm(Cochain.zero(4), name="zero")
    assert cert.sup_norm == 0
    assert "argmax" not in cert.to_json_obj()
    with pytest.raises(ValueError):
        sup_norm(Cochain.zero(3))


def test_sup_norm_callable_route():
    cert = sup_norm(lambda c: Fraction(min(counts(c)), 5), name="count")
    assert cert.sup_norm == 1
    assert EXTREMAL in cert.argmax


def test_cocycle_sampled_is_deterministic():
    a = verify_cocycle_theta(sample=20000, seed=42, jobs=2)
    b = verify_cocycle_theta(sample=20000, seed=42, jobs=1)
    assert a.ok and a.sampled and a.checked == 20000
    assert a.to_json_obj() == b.to_json_obj()


@pytest.mark.parametrize("term", range(6))
def test_fault_injection_is_caught(term):
    with inject_fault(term):
        broken = theta_cochain()
        assert not np.array_equal(4 * theta_values("reduced"), theta_values("full"))
        assert any(theta_reduced(c) != theta_full(c) for c in sup_norm(broken).argmax)
    assert np.array_equal(4 * theta_values("reduced"), theta_values("full"))
    assert theta_cochain() != broken
