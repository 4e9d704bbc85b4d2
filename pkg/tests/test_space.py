import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from demikit import (
    Domain,
    collect_samples,
    convex_combination,
    grid_sample,
    inner,
    norm,
    random_sample,
)
from demikit.errors import DimMismatchError, StepOutOfRangeError, UnboundedDomainError

finite_coord = st.floats(min_value=-10.0, max_value=10.0,
                         allow_nan=False, allow_infinity=False)
wide_coord = st.floats(min_value=-1e6, max_value=1e6,
                       allow_nan=False, allow_infinity=False)


def vectors(dim):
    return st.lists(finite_coord, min_size=dim, max_size=dim).map(np.array)


# --- inner -----------------------------------------------------------------

def test_inner_orthogonal():
    assert inner([1.0, 0.0], [0.0, 1.0]) == 0.0


def test_inner_unit():
    assert inner([1.0], [1.0]) == 1.0


def test_inner_scalar_product():
    # 3/4 * 1/8 = 3/32, exact in binary
    assert inner([0.75], [0.125]) == 3.0 / 32.0


def test_inner_dim_mismatch():
    with pytest.raises(DimMismatchError) as err:
        inner([1.0, 2.0], [1.0])
    assert err.value.code == "dim-mismatch"


@given(vectors(3), vectors(3))
def test_inner_symmetric(x, y):
    assert inner(x, y) == inner(y, x)


# --- norm ------------------------------------------------------------------

def test_norm_zero():
    assert norm([0.0, 0.0, 0.0]) == 0.0


def test_norm_pythagorean():
    assert norm([3.0, 4.0]) == 5.0


def test_norm_jump_size():
    # |7/8 - 1/4| of the discontinuous gallery member
    assert norm([-0.625]) == 0.625


def test_norm_zero_iff_zero_vector():
    assert norm([1e-150]) > 0.0


# --- convex combinations ----------------------------------------------------

def test_convex_combination_endpoint_zero():
    x = np.array([1.3, -2.0])
    y = np.array([0.5, 8.0])
    out = convex_combination(x, y, 0.0)
    assert np.array_equal(out, x)
    out[0] = 99.0  # returned copy must not alias the input
    assert x[0] == 1.3


def test_convex_combination_endpoint_one_exact():
    x = np.array([0.1])
    y = np.array([1.0 / 3.0])
    assert convex_combination(x, y, 1.0)[0] == y[0]


def test_convex_combination_first_relaxed_step():
    assert convex_combination([1.0], [0.25], 0.25)[0] == 0.8125


def test_convex_combination_midpoint():
    assert convex_combination([0.0], [2.0], 0.5)[0] == 1.0


def test_convex_combination_step_range():
    with pytest.raises(StepOutOfRangeError) as err:
        convex_combination([0.0], [1.0], 1.5)
    assert err.value.code == "step-out-of-range"
    with pytest.raises(StepOutOfRangeError):
        convex_combination([0.0], [1.0], -0.1)


def test_convex_combination_dim_mismatch():
    with pytest.raises(DimMismatchError):
        convex_combination([0.0], [1.0, 2.0], 0.5)


@settings(max_examples=200)
@given(vectors(2), vectors(2), st.floats(min_value=0.0, max_value=1.0))
def test_convex_combination_stays_in_box(x, y, t):
    lo = np.minimum(x, y)
    hi = np.maximum(x, y)
    box = Domain.box(lo, hi)
    z = convex_combination(x, y, t)
    # the fused form can round at most one ulp outside the hull; the
    # containment claim is tested against an exact-arithmetic hull check
    assert np.all(z >= lo - np.spacing(np.abs(lo))) and \
        np.all(z <= hi + np.spacing(np.abs(hi)))
    if t in (0.0, 1.0):
        assert box.contains(z)


# --- algebraic identities of the ambient space -------------------------------

@settings(max_examples=300)
@given(vectors(4), vectors(4))
def test_cauchy_schwarz_desk_scale(x, y):
    assert abs(inner(x, y)) <= norm(x) * norm(y) + 1e-12


@settings(max_examples=300)
@given(st.lists(wide_coord, min_size=4, max_size=4).map(np.array),
       st.lists(wide_coord, min_size=4, max_size=4).map(np.array))
def test_cauchy_schwarz_wide_scale_relative(x, y):
    bound = norm(x) * norm(y)
    assert abs(inner(x, y)) <= bound + 1e-12 * max(1.0, bound)


@settings(max_examples=300)
@given(vectors(3), vectors(3))
def test_parallelogram_law(x, y):
    scale = max(1.0, norm(x) ** 2 + norm(y) ** 2)
    resid = norm(x + y) ** 2 + norm(x - y) ** 2 - 2 * norm(x) ** 2 - 2 * norm(y) ** 2
    assert abs(resid) <= 1e-10 * scale


def test_parallelogram_law_desk_scale(rng):
    for _ in range(500):
        x = rng.uniform(-2, 2, size=3)
        y = rng.uniform(-2, 2, size=3)
        resid = (norm(x + y) ** 2 + norm(x - y) ** 2
                 - 2 * norm(x) ** 2 - 2 * norm(y) ** 2)
        assert abs(resid) <= 1e-10


# --- domains -----------------------------------------------------------------

def test_box_contains_exact():
    box = Domain.box([0.0], [1.0])
    assert box.contains([0.0]) and box.contains([1.0]) and box.contains([0.5])
    assert not box.contains([1.0 + 1e-16 + 1e-12])
    assert not box.contains([-1e-300])


def test_ball_contains_exact():
    ball = Domain.ball([0.0, 0.0], 1.0)
    assert ball.contains([1.0, 0.0])
    assert not ball.contains([1.0, 1e-7])


def test_box_validation():
    with pytest.raises(ValueError):
        Domain.box([1.0], [0.0])


# --- grids -------------------------------------------------------------------

def test_grid_two_points():
    g = grid_sample(Domain.box([0.0], [1.0]), 2)
    assert g.tolist() == [[0.0], [1.0]]


def test_grid_three_points():
    g = grid_sample(Domain.box([0.0], [2.0]), 3)
    assert g.tolist() == [[0.0], [1.0], [2.0]]


def test_grid_reciprocal_domain():
    g = grid_sample(Domain.box([0.5], [2.0]), 4)
    assert g.tolist() == [[0.5], [1.0], [1.5], [2.0]]


def test_grid_corners_present_2d():
    box = Domain.box([0.0, -1.0], [1.0, 3.0])
    g = grid_sample(box, 5)
    assert g.shape == (25, 2)
    rows = {tuple(r) for r in g.tolist()}
    for corner in [(0.0, -1.0), (0.0, 3.0), (1.0, -1.0), (1.0, 3.0)]:
        assert corner in rows
    for r in g:
        assert box.contains(r)


def test_grid_lexicographic_order():
    g = grid_sample(Domain.box([0.0, 0.0], [1.0, 1.0]), 2)
    assert g.tolist() == [[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]]


def test_grid_requires_box():
    with pytest.raises(UnboundedDomainError) as err:
        grid_sample(Domain.whole_space(2), 3)
    assert err.value.code == "unbounded-domain"


# --- random sampling ----------------------------------------------------------

def test_random_sample_deterministic():
    box = Domain.box([0.0], [1.0])
    a = random_sample(box, 5, seed=42)
    b = random_sample(box, 5, seed=42)
    assert np.array_equal(a, b)
    c = random_sample(box, 5, seed=43)
    assert not np.array_equal(a, c)


def test_random_sample_ball_containment():
    ball = Domain.ball([0.0, 0.0, 0.0], 1.0)
    xs = random_sample(ball, 100, seed=7)
    for x in xs:
        assert ball.contains(x)


def test_random_sample_whole_space_shape():
    xs = random_sample(Domain.whole_space(3), 10, seed=1)
    assert xs.shape == (10, 3)
    assert np.all(np.isfinite(xs))


def test_random_sample_whole_space_scale():
    a = random_sample(Domain.whole_space(2), 50, seed=3, scale=1.0)
    b = random_sample(Domain.whole_space(2), 50, seed=3, scale=2.0)
    assert np.array_equal(2.0 * a, b)


def test_random_sample_box_containment(rng):
    box = Domain.box([-1.0, 2.0], [1.5, 2.5])
    xs = random_sample(box, 200, seed=11)
    for x in xs:
        assert box.contains(x)


def test_collect_samples_grid_first():
    box = Domain.box([0.0], [1.0])
    pool = collect_samples(box, 3, 4, seed=5)
    assert pool.shape == (7, 1)
    assert pool[:3].tolist() == [[0.0], [0.5], [1.0]]
    assert np.array_equal(pool[3:], random_sample(box, 4, seed=5))


def test_collect_samples_unbounded_needs_randoms():
    with pytest.raises(ValueError):
        collect_samples(Domain.whole_space(1), 201, 0, seed=1)
