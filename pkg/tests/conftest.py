import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from thetanorm.circle_core import Configuration, relabel

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def rank_vectors(t):
    return st.lists(st.integers(0, t - 1), min_size=t, max_size=t).map(relabel)


@st.composite
def configurations(draw, t=None):
    if t is None:
        t = draw(st.integers(1, 6))
    return Configuration.of(draw(rank_vectors(t)), draw(rank_vectors(t)))
