"""Randomized property suite over well-typed terms of size at most 50."""

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

import properties
import support
from hotg.terms import size

SIG = support.small_signature()

PROPERTY_SETTINGS = settings(
    max_examples=1000,
    deadline=None,
    derandomize=True,
    database=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large,
                           HealthCheck.filter_too_much],
)


@st.composite
def typed_terms(draw, budget=st.integers(1, 45)):
    gen = support.TermGen(lambda n: draw(st.integers(0, n - 1)))
    ty = gen.type()
    t = gen.term(ty, [], draw(budget))
    return t, ty


@st.composite
def term_pairs(draw):
    gen = support.TermGen(lambda n: draw(st.integers(0, n - 1)))
    ty = gen.type()
    return gen.term(ty, [], draw(st.integers(1, 40))), gen.term(ty, [], draw(st.integers(1, 40))), ty


@PROPERTY_SETTINGS
@given(typed_terms())
def test_core_properties(sample):
    t, ty = sample
    assume(size(t) <= properties.MAX_SIZE)
    properties.check_term(t, ty, SIG)


@PROPERTY_SETTINGS
@given(term_pairs())
def test_conv_laws_on_pairs(sample):
    s, t, ty = sample
    assume(size(s) <= properties.MAX_SIZE and size(t) <= properties.MAX_SIZE)
    properties.check_term(s, ty, SIG, other=t)
