"""Smoke tests for the python bindings."""

import math

import pytest

import septrace as st


def test_roundtrip():
    s = st.from_bits("01001")
    assert s.gaps == [1, 2, 0]
    assert s.t == 2
    assert st.to_bits(s) == "01001"
    assert st.reverse_bits("001") == "100"


def test_gap_sum():
    assert st.gap_sum([3, 5, 7], 0, 2) == 8
    assert st.gap_sum([3, 5, 7], 1, 1) == 0


def test_random_separated_is_valid_and_deterministic():
    a = st.random_separated(200, 8, 10, seed=5)
    b = st.random_separated(200, 8, 10, seed=5)
    assert a.gaps == b.gaps
    assert a.length == 200
    assert a.t == 10
    assert min(a.gaps[1:-1]) >= 8


def test_channel_identity_at_zero_noise():
    x = st.from_bits("0100100001")
    tr = st.sample_trace(x, 0.0, seed=1)
    assert tr.bits == st.to_bits(x)
    assert tr.retained == list(range(10))
    padded = st.sample_padded_trace(st.from_bits("1"), 2, 0.0, seed=1)
    assert padded.bits == "00100"


def test_gap_profile():
    p = st.profile_of_bits("001")
    assert p.ones == 1
    assert p.positions == [0, 3, 4]
    assert p.gaps == [2, 0]


def test_align_exact():
    assert st.align([100, 100, 100], 1, [100.0, 100.0, 100.0], c0=1.0, n_ref=1000) == (1, 100)
    assert st.align([1000, 3], 1, [10.0, 10.0], c0=1.0, n_ref=8) is None


def test_simulate_process_zero_noise():
    run = st.simulate_process([50, 60, 70], [50.0, 60.0, 70.0], 0.0, c0=1.0, n_ref=500, seed=3)
    assert run["outcome"] == "exact"
    assert run["aligned"] == [0, 1, 2, 3]


def test_enumeration_sums_to_one():
    a = [10000] + [150] * 9
    d = st.enumerate_outcomes(a, [float(v) for v in a], 0.01, c0=1.0, n_ref=1000)
    total = sum(d["by_offset"].values()) + d["failed"]
    assert math.isclose(total, 1.0, abs_tol=1e-12)
    assert math.isclose(d["by_offset"][0], 0.99, rel_tol=1e-3)


def test_catalan_exact():
    assert [st.catalan(k) for k in range(5)] == [1, 1, 2, 5, 14]
    assert st.catalan(30) == 3814986502092304
    assert st.d_k(2) == 2 * 10**6


def test_estimate_t():
    assert st.estimate_t([7, 7, 7], 0.0) == 7
    assert st.estimate_t([3, 3, 3], 0.25) == 4


def test_reconstruct_small_zero_noise():
    x = st.random_separated(800, 30, 8, seed=11)
    out = st.reconstruct_live(x, padding=30, delta=0.0, seed=2,
                              coarse_reps=2, fine_traces=2, t_traces=2)
    assert out["bits"] == st.to_bits(x)
    assert out["t"] == 8


def test_reconstruct_noisy():
    x = st.random_separated(2000, 100, 12, seed=12)
    out = st.reconstruct_live(x, padding=100, delta=0.03, seed=3,
                              coarse_reps=32, fine_traces=3000, t_traces=500)
    assert out["bits"] == st.to_bits(x)


def test_stage_failure_is_raised():
    x = st.from_bits("0" * 50)
    with pytest.raises(Exception):
        st.reconstruct_live(x, padding=-1, delta=0.0, seed=1)
