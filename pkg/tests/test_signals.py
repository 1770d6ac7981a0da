from itertools import combinations

import numpy as np
import pytest

from ompbounds import (
    RngStream,
    SparseSignal,
    build_identity_hadamard,
    draw_sparse_signal,
    draw_support,
    synthesize,
)


def _zero_signal(n: int) -> SparseSignal:
    return SparseSignal(
        values=np.zeros(n), support=np.array([], dtype=np.int64), s_min=1.0, s_max=1.0
    )


def test_stream_reproducibility_bit_for_bit():
    d = build_identity_hadamard(16)
    out = []
    for _ in range(2):
        g = RngStream(77, 5).generator()
        s = draw_sparse_signal(g, d.n, 3, 0.5, 1.0)
        m = synthesize(d, s, 0.1, g)
        out.append((s.values.copy(), s.support.copy(), m.observed.copy(), m.noise.copy()))
    np.testing.assert_array_equal(out[0][0], out[1][0])
    np.testing.assert_array_equal(out[0][1], out[1][1])
    np.testing.assert_array_equal(out[0][2], out[1][2])
    np.testing.assert_array_equal(out[0][3], out[1][3])


def test_distinct_streams_differ():
    a = draw_support(RngStream(77, 1), 100, 10)
    b = draw_support(RngStream(77, 2), 100, 10)
    c = draw_support(RngStream(78, 1), 100, 10)
    assert not np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_draw_support_edges():
    assert draw_support(RngStream(0, 0), 5, 0).size == 0
    full = draw_support(RngStream(0, 0), 5, 5)
    assert sorted(full.tolist()) == [0, 1, 2, 3, 4]
    with pytest.raises(ValueError):
        draw_support(RngStream(0, 0), 5, 6)


def test_draw_support_uniform_over_pairs():
    # n=6, tau=2: 15 unordered pairs, each should appear with freq 1/15 +- 0.01.
    n_draws = 60_000
    g = RngStream(2024, 3).generator()
    counts = {frozenset(pair): 0 for pair in combinations(range(6), 2)}
    for _ in range(n_draws):
        counts[frozenset(draw_support(g, 6, 2).tolist())] += 1
    for pair, cnt in counts.items():
        assert abs(cnt / n_draws - 1 / 15) < 0.01, pair


def test_signal_zero_sparsity():
    s = draw_sparse_signal(RngStream(1, 1), 10, 0, 0.5, 1.0)
    assert s.support.size == 0 and not s.values.any()


def test_signal_degenerate_interval_gives_unit_magnitudes():
    s = draw_sparse_signal(RngStream(1, 2), 64, 8, 1.0, 1.0)
    np.testing.assert_array_equal(np.abs(s.values[s.support]), np.ones(8))


def test_signal_moments():
    # 1e5 nonzeros: mean magnitude of U[0.5, 1] is 0.75; signs are centered.
    g = RngStream(5, 0).generator()
    mags, signs = [], []
    for _ in range(1000):
        s = draw_sparse_signal(g, 200, 100, 0.5, 1.0)
        nz = s.values[s.support]
        mags.append(np.abs(nz))
        signs.append(np.sign(nz))
    mags, signs = np.concatenate(mags), np.concatenate(signs)
    assert mags.size == 100_000
    assert abs(mags.mean() - 0.75) < 0.005
    assert abs(signs.mean()) < 0.01


def test_signal_dynamic_range_always_respected():
    g = RngStream(6, 0).generator()
    for _ in range(50):
        s = draw_sparse_signal(g, 32, 5, 0.25, 0.9)
        nz = np.abs(s.values[s.support])
        assert nz.min() >= 0.25 and nz.max() <= 0.9
        off = np.delete(s.values, s.support)
        assert not off.any()


@pytest.mark.parametrize("s_min,s_max", [(0.0, 1.0), (-0.5, 1.0), (2.0, 1.0)])
def test_signal_rejects_bad_range(s_min, s_max):
    with pytest.raises(ValueError):
        draw_sparse_signal(RngStream(0, 0), 10, 2, s_min, s_max)


def test_synthesize_noiseless_identity_column():
    d = build_identity_hadamard(4)
    values = np.zeros(8)
    values[0] = 0.7
    s = SparseSignal(values=values, support=np.array([0]), s_min=0.7, s_max=0.7)
    m = synthesize(d, s, 0.0, RngStream(0, 1))
    np.testing.assert_array_equal(m.observed, [0.7, 0.0, 0.0, 0.0])
    np.testing.assert_array_equal(m.noise, np.zeros(4))


def test_synthesize_noise_variance():
    d = build_identity_hadamard(128)
    g = RngStream(11, 0).generator()
    zero = _zero_signal(d.n)
    samples = np.concatenate(
        [synthesize(d, zero, 1.0, g).noise for _ in range(800)]
    )
    assert samples.size >= 100_000
    assert abs(samples.var() - 1.0) < 0.02
    np.testing.assert_array_equal(
        synthesize(d, zero, 0.0, RngStream(11, 1)).observed, np.zeros(d.m)
    )


def test_noise_scaling_is_exact():
    d = build_identity_hadamard(32)
    zero = _zero_signal(d.n)
    w1 = synthesize(d, zero, 0.01, RngStream(3, 9)).noise
    w2 = synthesize(d, zero, 0.02, RngStream(3, 9)).noise
    np.testing.assert_array_equal(w2, 2.0 * w1)


def test_synthesize_dimension_mismatch():
    d = build_identity_hadamard(8)
    s = draw_sparse_signal(RngStream(0, 0), 10, 2, 0.5, 1.0)
    with pytest.raises(ValueError):
        synthesize(d, s, 0.1, RngStream(0, 1))


def test_measurement_identity():
    d = build_identity_hadamard(16)
    g = RngStream(4, 2).generator()
    s = draw_sparse_signal(g, d.n, 4, 0.5, 1.0)
    m = synthesize(d, s, 0.05, g)
    np.testing.assert_array_equal(m.observed, d.matvec(s.values) + m.noise)
    assert m.sigma == 0.05
