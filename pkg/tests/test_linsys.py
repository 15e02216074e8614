import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from _forms import points, s, t, to_sympy
from hopf_spectra import linsys
from hopf_spectra.binform import BinaryForm, ProjPoint, root_multiplicity_at, squarefree_decomposition
from hopf_spectra.graph import DEFAULT_THETAS, classify, fiber_form, profile, ramification_divisor
from hopf_spectra.linalg import mat_vec, rank
from hopf_spectra.linsys import (
    DimensionAnomaly,
    FatPoint,
    FatPointScheme,
    GeneralMemberError,
    LinearSystemError,
    condition_matrix,
    construct_max_weight,
    construct_profile,
    construct_tangency_stratum,
    distinct_points,
    general_member,
    h0,
    kernel_basis,
    taylor_functional,
)


def scheme(*pts) -> FatPointScheme:
    return FatPointScheme(tuple(FatPoint(i, ProjPoint(*x), m) for i, x, m in pts))


def max_weight_scheme(n, p=(1, 2), q=(3, -1)) -> FatPointScheme:
    return scheme((1, p, n), (2, q, n))


# -- condition matrix ------------------------------------------------------

def test_double_point_at_origin_on_first_theta():
    M = condition_matrix(scheme((1, (0, 1), 2)), 2)
    assert M.shape == (2, 6) and M.rank == 2
    # c0 = c1 = 0 on P, nothing on Q
    assert [list(r) for r in M.rows] == [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0]]


def test_empty_scheme():
    M = condition_matrix(FatPointScheme(), 3)
    assert M.shape == (0, 8) and M.rank == 0
    assert h0(FatPointScheme(), 3) == 8


def test_two_double_points_on_two_thetas():
    rng = random.Random(0)
    for _ in range(10):
        p, q = distinct_points(2, rng)
        assert condition_matrix(scheme((1, p, 2), (2, q, 2)), 2).rank == 4


@pytest.mark.parametrize("Z, n, dim", [
    (scheme((1, (5, 2), 2)), 2, 4),
    (max_weight_scheme(2), 2, 2),
    (max_weight_scheme(5), 5, 2),
    (max_weight_scheme(8, (0, 1), (1, 0)), 8, 2),
    (scheme((1, (1, 1), 2), (1, (2, 1), 1)), 3, 5),
    (scheme((1, (1, 0), 3)), 3, 5),
])
def test_h0_examples(Z, n, dim):
    assert h0(Z, n) == dim


def test_multiplicity_above_n_plus_1_is_rejected():
    with pytest.raises(LinearSystemError, match="condition exceeds fiber degree"):
        condition_matrix(scheme((1, (0, 1), 4)), 2)
    # m = n + 1 is allowed and kills the fiber form entirely
    assert condition_matrix(scheme((1, (0, 1), 3)), 2).rank == 3


def test_scheme_validation_and_json():
    with pytest.raises(LinearSystemError):
        FatPoint(5, ProjPoint(0, 1), 1)
    with pytest.raises(LinearSystemError):
        FatPoint(1, ProjPoint(0, 1), 0)
    with pytest.raises(LinearSystemError):
        scheme((1, (0, 1), 1), (1, (0, 2), 2))
    Z = scheme((1, (0, 1), 2), (3, (2, -1), 1))
    assert FatPointScheme.from_json(Z.to_json()) == Z
    assert Z.degree == 3 and Z.thetas() == {1, 3}


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), points, st.integers(0, 6), st.lists(st.integers(-5, 5), min_size=7, max_size=7))
def test_taylor_functional_matches_sympy(d, x, j, raw):
    f = BinaryForm(d, raw[: d + 1])
    w = taylor_functional(d, x, j)
    got = sum(a * c for a, c in zip(w, f.coeffs))
    u = sympy.Symbol("u")
    if x.x1 == 0:
        local = to_sympy(f).subs({s: 1, t: u})
        centre = 0
    else:
        local = to_sympy(f).subs({s: u, t: 1})
        centre = sympy.Rational(x.x0, x.x1)
    want = sympy.diff(local, u, j).subs(u, centre) / sympy.factorial(j)
    assert got == want


# -- kernels and members ---------------------------------------------------

def test_kernel_basis_examples():
    assert len(kernel_basis(FatPointScheme(), 1)) == 4
    assert len(kernel_basis(max_weight_scheme(2), 2)) == 2


def test_kernel_vectors_satisfy_the_conditions():
    rng = random.Random(7)
    for n in range(2, 7):
        pts = distinct_points(3, rng)
        Z = scheme((1, pts[0], 2), (2, pts[1], 1), (4, pts[2], min(n, 2)))
        M = condition_matrix(Z, n)
        for v in kernel_basis(Z, n):
            assert all(c == 0 for c in mat_vec(M.rows, v))
            assert all(isinstance(c, int) for c in v)


def test_empty_linear_system():
    Z = scheme((1, (0, 1), 2), (2, (0, 1), 2), (3, (1, 0), 2))
    with pytest.raises(LinearSystemError, match="empty linear system"):
        kernel_basis(Z, 1)


def test_general_member_with_a_double_point():
    Z = scheme((1, (0, 1), 2))
    D = general_member(Z, 2, seed=3)
    assert D.smooth
    assert profile(D, DEFAULT_THETAS[1]).multiplicities == (2,)
    for i in (2, 3, 4):
        assert profile(D, DEFAULT_THETAS[i]).multiplicities == (1, 1)


def test_general_member_of_everything_is_generic():
    D = general_member(FatPointScheme(), 4, seed=0)
    assert D.smooth and classify(D).total_weight == 0
    assert squarefree_decomposition(ramification_divisor(D)).is_squarefree()


def test_general_member_hits_a_full_restricted_profile():
    Z = scheme((3, (1, 2), 3), (3, (-1, 1), 2))
    D = general_member(Z, 5, seed=1)
    assert profile(D, DEFAULT_THETAS[3]).reduced == (3, 2)


def test_general_member_reports_failure():
    # two points of the same vertical line on different thetas force a jump
    Z = scheme((1, (1, 1), 1), (2, (1, 1), 1))
    with pytest.raises(GeneralMemberError) as info:
        general_member(Z, 2, seed=0, max_attempts=3)
    assert info.value.diagnostics["problems"] == ["not smooth"]
    assert info.value.diagnostics["attempt"] == 3


def test_general_member_is_seeded():
    Z = scheme((2, (1, 3), 2))
    assert general_member(Z, 3, seed=11) == general_member(Z, 3, seed=11)


# -- constructors ----------------------------------------------------------

@pytest.mark.parametrize("pattern, n, weights, codim", [
    ((1, 2), 2, (1, 1, 0, 0), 2),
    ((1, 2, 3), 4, (1, 1, 1, 0), 3),
    ((2, 4), 5, (0, 1, 0, 1), 2),
    ((3,), 3, (0, 0, 1, 0), 1),
])
def test_tangency_examples(pattern, n, weights, codim):
    c = construct_tangency_stratum(pattern, n, seed=0)
    assert c.curve.smooth
    assert c.classification.per_theta_weights == weights
    assert c.codimension == codim
    assert c.certificate == {"deg_Z": 2 * len(pattern), "rank": 2 * len(pattern),
                             "h0": 2 * n + 2 - 2 * len(pattern)}


def test_tangency_thresholds():
    with pytest.raises(LinearSystemError, match="n below theorem threshold"):
        construct_tangency_stratum((1, 2, 3), 3)
    with pytest.raises(LinearSystemError, match="n below theorem threshold"):
        construct_tangency_stratum((1,), 1)
    with pytest.raises(LinearSystemError):
        construct_tangency_stratum((1, 1), 3)
    with pytest.raises(LinearSystemError):
        construct_tangency_stratum((1, 2, 3, 4), 6)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_max_weight(n):
    c = construct_max_weight(1, 2, n, seed=0)
    w = c.classification.per_theta_weights
    assert w == (n - 1, n - 1, 0, 0) and sum(w) == 2 * n - 2
    assert c.h0 == 2
    p, q = (pt.x for pt in c.scheme.points)
    assert p != q
    assert root_multiplicity_at(fiber_form(c.curve, DEFAULT_THETAS[1]), p) == n


def test_max_weight_other_thetas():
    c = construct_max_weight(4, 3, 4, seed=2)
    assert c.classification.per_theta_weights == (0, 0, 3, 3)


def test_max_weight_dimension_anomaly(monkeypatch):
    monkeypatch.setattr(linsys, "h0", lambda Z, n, T: 3)
    with pytest.raises(DimensionAnomaly):
        construct_max_weight(1, 2, 3)


def test_profile_constructor_reports_bound():
    c = construct_profile(3, (3, 2), 5, seed=0)
    assert profile(c.curve, DEFAULT_THETAS[3]).reduced == (3, 2)
    assert c.codimension_bound == 3 and c.codimension <= 3
    assert c.to_json()["bound_attained"] == (c.codimension == 3)


def test_profile_constructor_validation():
    with pytest.raises(LinearSystemError):
        construct_profile(1, (3, 2), 4)
    with pytest.raises(LinearSystemError):
        construct_profile(1, (2, 1), 4)
    with pytest.raises(LinearSystemError):
        construct_profile(0, (2,), 4)


def test_constructors_are_deterministic():
    a = construct_tangency_stratum((1, 3), 4, seed=9).to_json()
    b = construct_tangency_stratum((1, 3), 4, seed=9).to_json()
    assert a == b


# -- properties ------------------------------------------------------------

@st.composite
def single_line_schemes(draw):
    n = draw(st.integers(1, 6))
    theta = draw(st.integers(1, 4))
    total = draw(st.integers(1, n))
    ms = []
    while total:
        m = draw(st.integers(1, total))
        ms.append(m)
        total -= m
    xs = draw(st.lists(points, min_size=len(ms), max_size=len(ms), unique=True))
    return n, FatPointScheme(tuple(FatPoint(theta, x, m) for x, m in zip(xs, ms)))


@settings(max_examples=150, deadline=None)
@given(single_line_schemes())
def test_single_line_conditions_are_independent(case):
    n, Z = case
    assert h0(Z, n) == 2 * n + 2 - Z.degree


@settings(max_examples=100, deadline=None)
@given(single_line_schemes(), points, points)
def test_extra_simple_point_adds_one_condition(case, q, b):
    n, Z = case
    theta = next(iter(Z.thetas()))
    if b == DEFAULT_THETAS[theta] and q in {p.x for p in Z.points}:
        return
    M = condition_matrix(Z, n)
    w = taylor_functional(n, q, 0)
    row = [b.x0 * c for c in w] + [b.x1 * c for c in w]
    assert rank(list(M.rows) + [row]) == M.rank + 1


@settings(max_examples=30, deadline=None)
@given(single_line_schemes(), st.integers(0, 2**32))
def test_members_have_the_prescribed_contact(case, seed):
    n, Z = case
    if n < 2:
        return
    D = general_member(Z, n, seed=seed)
    for pt in Z.points:
        assert root_multiplicity_at(fiber_form(D, DEFAULT_THETAS[pt.theta]), pt.x) == pt.m
