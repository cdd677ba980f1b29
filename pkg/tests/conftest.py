"""Bundled field models and pairs shared across the suite."""

import pytest

from localsym.forms import Case
from localsym.localfield import Prime
from localsym.numfield import BiquadField
from localsym.symspace import ClassicalPair

P2, P3, P5 = Prime(2), Prime(3), Prime(5)

# quadratic models: sqrt(a) generates the upstairs extension locally
QUAD_M3 = BiquadField(-1)      # Q(i), nonsquare at 3
QUAD_3 = BiquadField(3)        # Q(sqrt 3), ramified at 3
QUAD_M5 = BiquadField(2)       # Q(sqrt 2), nonsquare at 5

# biquadratic models (a, b, ab all nonsquare at p)
BIQ_3 = BiquadField(-1, 3)
BIQ_5 = BiquadField(2, 5)
BIQ_2 = BiquadField(-1, 2)


def make_pair(case, n0, j, n, p=P3, field=None):
    if field is None:
        field = BIQ_3 if case is Case.UNITARY else QUAD_M3
    return ClassicalPair(case, n0, tuple(j), n, p, field)


@pytest.fixture(scope="session")
def bundled_pairs():
    """Small-grid pairs used by the representative-identity criteria."""
    pairs = [
        make_pair(Case.SYMPLECTIC, 0, (), 1),
        make_pair(Case.SYMPLECTIC, 0, (), 2),
        make_pair(Case.SYMPLECTIC, 0, (), 3),
        make_pair(Case.ORTHOGONAL, 0, (), 1),
        make_pair(Case.ORTHOGONAL, 0, (), 2),
        make_pair(Case.ORTHOGONAL, 0, (), 3),
        make_pair(Case.ORTHOGONAL, 1, (1,), 1),
        make_pair(Case.ORTHOGONAL, 1, (1,), 2),
        make_pair(Case.ORTHOGONAL, 2, (1, 1), 1),
        make_pair(Case.ORTHOGONAL, 2, (1, 1), 2),
        make_pair(Case.UNITARY, 0, (), 1),
        make_pair(Case.UNITARY, 0, (), 2),
        make_pair(Case.UNITARY, 1, (1,), 1),
        make_pair(Case.UNITARY, 1, (1,), 2),
        make_pair(Case.UNITARY, 2, (1, 1), 1),
        # other residue characteristics, including p = 2
        ClassicalPair(Case.ORTHOGONAL, 1, (1,), 1, P2, BiquadField(-1)),
        ClassicalPair(Case.ORTHOGONAL, 0, (), 2, P5, QUAD_M5),
        ClassicalPair(Case.SYMPLECTIC, 0, (), 1, P2, BiquadField(-1)),
        ClassicalPair(Case.UNITARY, 0, (), 1, P2, BIQ_2),
        ClassicalPair(Case.UNITARY, 1, (1,), 1, P5, BIQ_5),
    ]
    return pairs
