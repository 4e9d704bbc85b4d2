"""Backend-parity and oracle tests for the pair-scan kernels.

The oracle below is plain Python loops, deliberately independent of both
backends; everything else checks that the compiled extension and the
numpy fallback agree bit for bit, including witness tie-breaks.
"""

import math

import numpy as np
import pytest

from demikit._kernels import BACKEND, backends
from demikit._kernels import _numpy_backend as npb

ALL = backends()


def _dist(a, b):
    return math.sqrt(sum((a[i] - b[i]) ** 2 for i in range(len(a))))


def oracle_pair_max_ne(x, tx):
    best, bi, bj = -math.inf, -1, -1
    for i in range(len(x)):
        for j in range(len(x)):
            if i == j:
                continue
            v = _dist(tx[i], tx[j]) - _dist(x[i], x[j])
            if v > best:
                best, bi, bj = v, i, j
    return best, bi, bj


def oracle_pair_sup_spc_ratio(x, tx, floor):
    best, bi, bj = -math.inf, -1, -1
    for i in range(len(x)):
        for j in range(len(x)):
            if i == j:
                continue
            den = sum(((x[i][a] - x[j][a]) - (tx[i][a] - tx[j][a])) ** 2
                      for a in range(len(x[i])))
            if den <= floor * floor:
                continue
            num = (sum((tx[i][a] - tx[j][a]) ** 2 for a in range(len(x[i])))
                   - sum((x[i][a] - x[j][a]) ** 2 for a in range(len(x[i]))))
            v = num / den
            if v > best:
                best, bi, bj = v, i, j
    return best, bi, bj


def oracle_fix_max_dc(x, tx, fp, k):
    best, bi, bm = -math.inf, -1, -1
    for i in range(len(x)):
        for m in range(len(fp)):
            v = (_dist(tx[i], fp[m]) ** 2 - _dist(x[i], fp[m]) ** 2
                 - k * _dist(x[i], tx[i]) ** 2)
            if v > best:
                best, bi, bm = v, i, m
    return best, bi, bm


@pytest.fixture
def sample_data(rng):
    x = rng.uniform(-2.0, 2.0, size=(60, 2))
    tx = np.sin(x) + 0.25 * x
    fp = rng.uniform(-1.0, 1.0, size=(3, 2))
    return x, tx, fp


def test_backend_reports_itself():
    assert BACKEND in ("compiled", "python")
    assert "python" in ALL


def test_pair_max_ne_matches_oracle(sample_data):
    x, tx, _ = sample_data
    expected = oracle_pair_max_ne(x.tolist(), tx.tolist())
    for name, impl in ALL.items():
        got = impl.pair_max_ne(x, tx)
        assert got[0] == pytest.approx(expected[0], abs=1e-13), name
        assert (int(got[1]), int(got[2])) == expected[1:], name


def test_pair_sup_spc_ratio_matches_oracle(sample_data):
    x, tx, _ = sample_data
    expected = oracle_pair_sup_spc_ratio(x.tolist(), tx.tolist(), 1e-9)
    for name, impl in ALL.items():
        got = impl.pair_sup_spc_ratio(x, tx, 1e-9)
        assert got[0] == pytest.approx(expected[0], rel=1e-12), name
        assert (int(got[1]), int(got[2])) == expected[1:], name


def test_fix_max_dc_matches_oracle(sample_data):
    x, tx, fp = sample_data
    expected = oracle_fix_max_dc(x.tolist(), tx.tolist(), fp.tolist(), 0.4)
    for name, impl in ALL.items():
        got = impl.fix_max_dc(x, tx, fp, 0.4)
        assert got[0] == pytest.approx(expected[0], abs=1e-13), name
        assert (int(got[1]), int(got[2])) == expected[1:], name


@pytest.mark.parametrize("fn,extra", [
    ("pair_max_ne", ()),
    ("pair_max_spc", (0.3,)),
    ("pair_sup_spc_ratio", (1e-9,)),
])
def test_pair_backends_bitwise_equal(fn, extra, rng):
    x = rng.standard_normal((257, 3))
    tx = np.tanh(x) * 1.25
    results = []
    for impl in ALL.values():
        v, i, j = getattr(impl, fn)(x, tx, *extra)
        results.append((float(v), int(i), int(j)))
    assert all(r == results[0] for r in results)


@pytest.mark.parametrize("fn,extra", [
    ("fix_max_qne", ()),
    ("fix_max_dc", (0.25,)),
    ("fix_sup_dc_ratio", (1e-9,)),
    ("fix_max_inner", (0.125,)),
])
def test_fix_backends_bitwise_equal(fn, extra, rng):
    x = rng.standard_normal((400, 4))
    tx = -1.5 * x + 0.1
    fp = rng.standard_normal((5, 4))
    results = []
    for impl in ALL.values():
        v, i, j = getattr(impl, fn)(x, tx, fp, *extra)
        results.append((float(v), int(i), int(j)))
    assert all(r == results[0] for r in results)


def test_numpy_chunking_invariant(rng, monkeypatch):
    x = rng.standard_normal((50, 2))
    tx = 0.5 * x * x
    whole = npb.pair_max_ne(x, tx)
    monkeypatch.setattr(npb, "_CHUNK", 7)
    chunked = npb.pair_max_ne(x, tx)
    assert whole == chunked
    whole_r = npb.pair_sup_spc_ratio(x, tx, 1e-9)
    assert npb.pair_sup_spc_ratio(x, tx, 1e-9) == whole_r


def test_tie_break_prefers_lowest_row_major_pair():
    # two pairs with exactly equal violation: (0,1) and (2,3); the scan
    # must report the row-major first one
    x = np.array([[0.0], [1.0], [10.0], [11.0]])
    tx = np.array([[0.0], [3.0], [10.0], [13.0]])
    for impl in ALL.values():
        v, i, j = impl.pair_max_ne(x, tx)
        assert (v, int(i), int(j)) == (2.0, 0, 1)


def test_symmetric_pair_tie_prefers_ordered_first():
    x = np.array([[0.0], [2.0]])
    tx = np.array([[0.0], [5.0]])
    for impl in ALL.values():
        v, i, j = impl.pair_max_ne(x, tx)
        assert (int(i), int(j)) == (0, 1)
        assert v == 3.0


def test_ratio_floor_skips_degenerate_pairs():
    # identical displacement => zero denominator => pair skipped
    x = np.array([[0.0], [1.0]])
    tx = np.array([[5.0], [6.0]])
    for impl in ALL.values():
        v, i, j = impl.pair_sup_spc_ratio(x, tx, 1e-9)
        assert v == -np.inf and int(i) == -1 and int(j) == -1


def test_dc_ratio_floor_skips_fixed_samples():
    x = np.array([[1.0], [2.0]])
    tx = np.array([[1.0], [3.0]])  # first row is a fixed sample
    fp = np.array([[0.0]])
    for impl in ALL.values():
        v, i, m = impl.fix_sup_dc_ratio(x, tx, fp, 1e-9)
        assert int(i) == 1
        assert v == (9.0 - 4.0) / 1.0


def test_single_point_pair_scan_is_empty():
    x = np.array([[1.0]])
    tx = np.array([[2.0]])
    for impl in ALL.values():
        v, i, j = impl.pair_max_ne(x, tx)
        assert v == -np.inf and int(i) == -1


def test_inner_kernel_sign_convention():
    # lam*||Tx-x||^2 - <x-Tx, x-y>: equality case must give exactly 0
    x = np.array([[1.0]])
    tx = np.array([[0.25]])
    fp = np.array([[0.875]])
    lam = 1.0 / 6.0
    for impl in ALL.values():
        v, i, m = impl.fix_max_inner(x, tx, fp, lam)
        assert abs(v) < 1e-16
