import random
from fractions import Fraction

import numpy as np
import pytest

from thetanorm.circle_core import Configuration
from thetanorm.cochains import Cochain
from thetanorm.cohomology import lambda_kernel, random_cochain
from thetanorm.comparison import (
    ClaimViolation,
    NotACocycle,
    PreconditionLambda,
    WellDefinednessViolation,
    build_h1,
    build_h2,
    build_h3,
    check_cocycle,
    decompose,
)
from thetanorm.config_space import counts
from thetanorm.theta import EXTREMAL, theta_cochain

X3 = (0, 0, 0, 1, 2)
X22 = (0, 0, 1, 1, 2)
# tuples with three distinct x values and four distinct y values, one per insertion pattern
LOW_COUNT_ANCHORS = {
    "triple_x": Configuration.of(X3, (0, 0, 1, 2, 3)),
    "triple_x_crossing": Configuration.of(X3, (0, 1, 3, 2, 0)),
    "triple_x_nested": Configuration.of(X3, (0, 1, 2, 3, 0)),
    "triple_x_adjacent": Configuration.of(X3, (0, 1, 2, 3, 3)),
    "two_pairs": Configuration.of(X22, (0, 0, 1, 2, 3)),
    "two_pairs_nested": Configuration.of(X22, (0, 1, 2, 3, 0)),
    "two_pairs_split": Configuration.of(X22, (0, 1, 0, 2, 3)),
}


@pytest.fixture(scope="module")
def coboundaries():
    rng = random.Random(21)
    return [random_cochain(3, "H", rng).coboundary() for _ in range(4)]


def test_coboundaries_decompose(coboundaries):
    for f in coboundaries:
        rep = decompose(f)
        assert rep.step1 and rep.step2 and rep.step3 and rep.final
        assert (rep.h1 + rep.h2 + rep.h3).coboundary() == f
        for h in (rep.h1, rep.h2, rep.h3):
            assert h.is_invariant()


def test_lambda_kernel_decomposes():
    for f in lambda_kernel():
        rep = decompose(f)
        assert rep.final
        assert rep.to_json_obj()["final"] is True


def test_theta_rejected():
    with pytest.raises(PreconditionLambda) as e:
        decompose(theta_cochain())
    assert e.value.value == 1
    rep = decompose(theta_cochain(), raise_on_precondition=False)
    obj = rep.to_json_obj()
    assert obj["precondition_failed"] == "lambda_functional"
    assert obj["lambda_functional"] == "1/1"
    assert not rep.final


def test_non_cocycle_rejected():
    f = random_cochain(4, "H", random.Random(0))
    assert check_cocycle(f) is not None
    with pytest.raises(NotACocycle):
        decompose(f)
    rep = decompose(f, raise_on_precondition=False)
    assert rep.precondition == "not_a_cocycle" and rep.counterexample


def test_non_invariant_rejected():
    f = Cochain.zero(4)
    f.num[f.space.config_index(EXTREMAL)] = 1
    rep = decompose(f, raise_on_precondition=False)
    assert rep.precondition == "not_invariant"
    with pytest.raises(ValueError):
        decompose(f.with_mode("G"))


def test_check_cocycle_on_theta():
    assert check_cocycle(theta_cochain()) is None


def test_h1_examples(coboundaries):
    f = coboundaries[0]
    h1 = build_h1(f)
    # no repeated x value: h1 vanishes
    assert h1(Configuration.of((0, 1, 2, 3), (0, 0, 1, 2))) == 0
    # x and y both repeated: read f at the inserted point
    c = Configuration.of((0, 0, 1, 2), (0, 1, 1, 2))
    assert h1(c) == f(Configuration.of((0, 0, 0, 1, 2), (1, 0, 1, 1, 2)))


def test_h2_h3_examples(coboundaries):
    f = coboundaries[1]
    f1 = f - build_h1(f).coboundary()
    h2 = build_h2(f1)
    c = Configuration.of((0, 0, 1, 2), (0, 1, 2, 3))
    expected = (f1(Configuration.of((0, 0, 0, 1, 2), (2, 0, 1, 2, 3)))
                + f1(Configuration.of((0, 0, 0, 1, 2), (3, 0, 1, 2, 3)))) / 2
    assert h2(c) == expected
    f2 = f1 - h2.coboundary()
    h3 = build_h3(f2)
    d = Configuration.of((0, 1, 2, 3), (0, 1, 2, 3))
    # the twelve off-diagonal insertions agree, so h3 equals any one of them
    assert h3(d) == f2(Configuration.of((0, 0, 1, 2, 3), (1, 0, 1, 2, 3)))


def test_second_stage_anchors(coboundaries):
    for name, c in LOW_COUNT_ANCHORS.items():
        assert counts(c) == (3, 4), name
    for f in coboundaries + lambda_kernel():
        f1 = f - build_h1(f).coboundary()
        f2 = f1 - build_h2(f1).coboundary()
        for name, c in LOW_COUNT_ANCHORS.items():
            assert f2(c) == 0, name


def test_ill_defined_insertions_raise():
    # a non-cocycle makes the insertion choices disagree somewhere
    f = random_cochain(4, "H", random.Random(3))
    with pytest.raises((WellDefinednessViolation, ClaimViolation)):
        f1 = f - build_h1(f).coboundary()
        f2 = f1 - build_h2(f1).coboundary()
        build_h3(f2)
