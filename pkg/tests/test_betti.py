from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopf_spectra.betti import betti_regular_locus, convolve, torus_betti


def test_torus_factor_alone():
    assert betti_regular_locus(2, [1]) == [1, 6, 15, 20, 15, 6, 1]


def test_convolution_by_hand():
    assert betti_regular_locus(2, [1, 1]) == [1, 7, 21, 35, 35, 21, 7, 1]


def test_trailing_zeros_are_ignored():
    assert betti_regular_locus(3, [1, 0, 2, 0, 0]) == betti_regular_locus(3, [1, 0, 2])


@pytest.mark.parametrize("n, bad", [
    (2, [1, 0, 0, 0, 0, 0, 1]),
    (3, [0] * 8 + [1]),
])
def test_rejects_cohomology_above_affine_dimension(n, bad):
    with pytest.raises(ValueError, match="exceeds affine homotopy dimension"):
        betti_regular_locus(n, bad)


def test_input_validation():
    with pytest.raises(ValueError):
        betti_regular_locus(1, [1])
    with pytest.raises(ValueError):
        betti_regular_locus(2, [1, -1])
    with pytest.raises(ValueError):
        betti_regular_locus(2, [])


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 10).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.integers(0, 50), min_size=1, max_size=2 * n + 2))))
def test_output_vanishes_from_degree_6n(case):
    n, b = case
    out = betti_regular_locus(n, b)
    assert len(out) - 1 < 6 * n
    assert sum(out) == sum(b) * 2 ** (4 * n - 2)
    # Euler characteristic of a positive-dimensional torus factor is zero
    assert sum((-1) ** k * x for k, x in enumerate(out)) == 0


def test_convolve_and_torus():
    assert torus_betti(3) == [1, 3, 3, 1]
    assert convolve([1, 2], [3, 4, 5]) == [3, 10, 13, 10]
    assert torus_betti(10) == [comb(10, k) for k in range(11)]
