import json
import random
from fractions import Fraction

import numpy as np
import pytest

from thetanorm.circle_core import Configuration
from thetanorm.cochains import Cochain, OverflowRisk, frac_str, parse_frac
from thetanorm.cohomology import random_cochain
from thetanorm.config_space import orbits
from thetanorm.theta import EXTREMAL, theta_cochain


def test_frac_helpers():
    assert frac_str(Fraction(2, 3)) == "2/3"
    assert frac_str(0) == "0/1"
    assert parse_frac(" -4/6 ") == Fraction(-2, 3)


def test_json_round_trip_theta():
    th = theta_cochain()
    obj = json.loads(th.to_json())
    assert obj["degree"] == 4 and obj["mode"] == "H"
    assert Cochain.from_json_obj(obj) == th


@pytest.mark.parametrize("q,mode", [(3, "H"), (3, "G"), (4, "H")])
def test_json_round_trip_random(q, mode):
    f = random_cochain(q, mode, random.Random(q))
    assert Cochain.from_json_obj(json.loads(f.to_json())) == f


def test_json_accepts_any_orbit_member():
    th = theta_cochain()
    # key on a non-representative member, written with non-canonical ranks
    obj = {"degree": 4, "mode": "H", "coeffs": {"X=[1,2,3,4,0];Y=[2,4,1,3,0]": "2/3"}}
    f = Cochain.from_json_obj(obj)
    orb = orbits(5, True)
    assert f(EXTREMAL) == Fraction(2, 3)
    assert sum(1 for v in f.coeffs() if v) == 1
    assert th(EXTREMAL) == Fraction(2, 3)
    assert len(orb.basis) == 26


def test_json_rejects_conflicts_and_forced():
    with pytest.raises(ValueError):
        Cochain.from_json_obj({"degree": 4, "coeffs": {
            "X=[0,1,2,3,4];Y=[0,2,4,1,3]": "1", "X=[1,2,3,4,0];Y=[2,4,1,3,0]": "2"}})
    with pytest.raises(ValueError):
        Cochain.from_json_obj({"degree": 4, "coeffs": {"X=[0,0,0,0,0];Y=[0,1,2,3,4]": "1"}})
    # zero on a forced orbit is harmless
    Cochain.from_json_obj({"degree": 4, "coeffs": {"X=[0,0,0,0,0];Y=[0,1,2,3,4]": "0"}})


def test_arithmetic():
    rng = random.Random(3)
    f, g = random_cochain(3, "H", rng), random_cochain(3, "H", rng)
    assert (f + g) - g == f
    assert f - f == Cochain.zero(3)
    assert (2 * f).sup_norm() == 2 * f.sup_norm()
    assert f.scale(Fraction(1, 3)) * 3 == f
    c = Configuration.of((0, 1, 2, 3), (0, 2, 1, 3))
    assert (f + g)(c) == f(c) + g(c)
    assert (f + g).coboundary() == f.coboundary() + g.coboundary()


def test_coboundary_at_matches_full():
    f = random_cochain(3, "H", random.Random(1))
    df = f.coboundary()
    idx = np.arange(0, df.space.N, 37)
    assert [Fraction(int(v), f.den) for v in f.coboundary_at(idx)] == [df.value_at_index(i) for i in idx]


def test_coeffs_round_trip_and_invariance():
    f = random_cochain(4, "H", random.Random(2))
    assert Cochain.from_coeffs(4, f.coeffs(), "H") == f
    assert f.is_invariant()
    broken = Cochain(4, f.num.copy(), f.den)
    k = int(orbits(5, True).reps[orbits(5, True).basis[0]])
    broken.num[k] += 1
    assert broken.invariance_defect() is not None


def test_bad_construction():
    with pytest.raises(ValueError):
        Cochain(2, np.zeros(5, dtype=np.int64))
    with pytest.raises(ValueError):
        Cochain(2, np.zeros(36, dtype=np.int64), 0)
    with pytest.raises(ValueError):
        Cochain.zero(2, "K")
    with pytest.raises(ValueError):
        Cochain.zero(2) + Cochain.zero(3)


def test_overflow_guard():
    big = Cochain(2, np.full(36, 2**61, dtype=np.int64))
    with pytest.raises(OverflowRisk):
        big + big
    with pytest.raises(OverflowRisk):
        big.scale(4)
    a = Cochain(2, np.ones(36, dtype=np.int64), 2**40 - 87)
    b = Cochain(2, np.ones(36, dtype=np.int64), 2**40 - 3)
    with pytest.raises(OverflowRisk):
        a + b
