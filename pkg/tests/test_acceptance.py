"""Acceptance gate: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines. Tolerances and runtime budgets are asserted exactly as stated; the
reversed-chain reference value in criterion 2 is asserted as published even
though exact recomputation contradicts it, so that check reports honestly.
"""

import itertools
import math
import time

import numpy as np
import pytest

import oracles
from conftest import CORPUS, model_path, raw_blocks
from lumpchain import (
    blackwell_entropy_estimate,
    build_chain,
    build_lumping,
    chain_entropy_rate,
    check_sfs,
    check_single_entry,
    check_strong_lumpable,
    check_weak_lumpable,
    conditional_entropy_rate_estimate,
    entropy_loss_bound,
    lumped_rate_bounds,
    pair_depth_cap,
    parse_model,
    preimage_count,
    reverse_chain,
    sample_trajectory,
    split_merge_index,
)

BLOCK_NAMES = ("A", "B", "C", "D")


def emit(criterion, ok, detail):
    print(f"ACCEPTANCE criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")
    return ok


def test_criterion_1_lossy_strong2_regression():
    t0 = time.perf_counter()
    chain, lumping = parse_model(model_path("lossy_strong2"))
    rate = chain_entropy_rate(chain)
    bounds = lumped_rate_bounds(chain, lumping, 2)
    strong2 = check_strong_lumpable(chain, lumping, 2).strong
    kappa = split_merge_index(chain, lumping).kappa
    loss = conditional_entropy_rate_estimate(chain, lumping, 2)
    elapsed = time.perf_counter() - t0
    ok = (abs(rate - 1.480) <= 1e-3
          and abs(bounds.upper - 0.733) <= 1e-3
          and abs(bounds.lower - 0.733) <= 1e-3
          and strong2 and math.isfinite(kappa)
          and abs(loss.loss_lower - 0.747) <= 2e-3
          and abs(loss.loss_upper - 0.747) <= 2e-3
          and elapsed < 1.0)
    assert emit(1, ok, f"rate={rate:.4f} bounds=({bounds.lower:.4f},{bounds.upper:.4f}) "
                       f"strong2={strong2} kappa={kappa} "
                       f"loss=({loss.loss_lower:.4f},{loss.loss_upper:.4f}) "
                       f"runtime={elapsed:.2f}s")


def test_criterion_2_weak_model_regression():
    t0 = time.perf_counter()
    chain, lumping = parse_model(model_path("weak_not_strong"))
    bounds = lumped_rate_bounds(chain, lumping, 1)
    weak = check_weak_lumpable(chain, lumping, 1, horizon=6).weak_up_to_horizon
    strong = check_strong_lumpable(chain, lumping, 1).strong
    elapsed = time.perf_counter() - t0
    ok = (abs(bounds.lower - 0.5588) <= 1e-4
          and abs(bounds.upper - 0.9061) <= 1e-4
          and weak.verdict and weak.horizon == 6
          and not strong
          and elapsed < 1.0)
    assert emit(2, ok, f"bounds=({bounds.lower:.4f},{bounds.upper:.4f}) "
                       f"weak1@6={weak.verdict} strong1={strong} runtime={elapsed:.2f}s")


def test_criterion_2_reversed_reference_value():
    # stated reference: 0.9048 +/- 0.0001; exact rational recomputation of
    # the same quantity gives 0.9045308788, so this check cannot pass as
    # stated and is kept honest rather than retuned
    chain, lumping = parse_model(model_path("weak_not_strong"))
    rev = reverse_chain(chain)
    value = lumped_rate_bounds(rev, lumping, 1).lower
    matrix = [list(r) for r in rev.transition]
    _, blocks = raw_blocks("weak_not_strong")
    mu = oracles.eliminate_stationary(matrix)
    recomputed = oracles.lower_bound_by_enumeration(matrix, mu, blocks, 1)
    assert value == pytest.approx(recomputed, abs=1e-12)
    ok = abs(value - 0.9048) <= 1e-4
    assert emit("2 (reversed reference value)", ok,
                f"reversed lower bound={value:.6f}, published 0.9048 +/- 0.0001, "
                f"independent recomputation {recomputed:.6f}")


def test_criterion_3_split_merge_window_fixtures():
    t0 = time.perf_counter()
    ok = True
    detail = []
    for name in ("merge_eps", "merge_hub"):
        chain, lumping = parse_model(model_path(name))
        res = split_merge_index(chain, lumping)
        w = res.witness
        good = (res.kappa == 1 and w is not None
                and (w.check_state, w.hat_state) == ("3", "3")
                and {w.path_a, w.path_b} == {("1",), ("2",)})
        ok = ok and good
        detail.append(f"{name}: kappa={res.kappa}")
    rng = np.random.default_rng(2024)
    for _ in range(10):
        n = int(rng.integers(3, 8))
        matrix = rng.random((n, n)) + 0.01
        matrix /= matrix.sum(axis=1, keepdims=True)
        chain = build_chain(matrix, [str(i) for i in range(n)])
        lumping = build_lumping(chain, {s: ("A" if i < 2 else f"B{i}")
                                        for i, s in enumerate(chain.states)})
        ok = ok and split_merge_index(chain, lumping).kappa == 1
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    assert emit(3, ok, "; ".join(detail) + f"; positive matrices kappa=1; "
                                           f"runtime={elapsed:.2f}s")


def test_criterion_4_figure_fixture_suite():
    t0 = time.perf_counter()
    checks = []

    chain, lumping = parse_model(model_path("tagged_branches"))
    checks.append(math.isinf(split_merge_index(chain, lumping).kappa))
    checks.append(not check_single_entry(chain, lumping).holds)
    checks.append(check_weak_lumpable(chain, lumping, 1, 6).weak_up_to_horizon.verdict)
    checks.append(check_strong_lumpable(chain, lumping, 2).strong)
    checks.append(not check_strong_lumpable(chain, lumping, 1).strong)

    chain, lumping = parse_model(model_path("parallel_cycle"))
    checks.append(check_single_entry(chain, lumping).holds)
    checks.append(check_strong_lumpable(chain, lumping, 1).strong)
    checks.extend(not check_sfs(chain, lumping, k).holds for k in range(2, 7))

    chain, lumping = parse_model(model_path("sticky_pair"))
    checks.append(check_single_entry(chain, lumping).holds)
    checks.extend(not check_weak_lumpable(chain, lumping, k, 8).weak_up_to_horizon.verdict
                  for k in range(1, 5))

    chain, lumping = parse_model(model_path("unique_entry"))
    checks.append(check_sfs(chain, lumping, 2).holds)
    checks.append(not check_strong_lumpable(chain, lumping, 1).strong)

    elapsed = time.perf_counter() - t0
    ok = all(checks) and elapsed < 10.0
    assert emit(4, ok, f"{sum(checks)}/{len(checks)} verdicts as expected, "
                       f"runtime={elapsed:.2f}s")


def test_criterion_5_oracle_equivalence():
    t0 = time.perf_counter()
    words_checked = 0
    for name in CORPUS:
        chain, lumping = parse_model(model_path(name))
        matrix, blocks = raw_blocks(name)
        for n in range(1, 9):
            for word_idx in itertools.product(range(lumping.n_blocks), repeat=n):
                word = [lumping.blocks[b] for b in word_idx]
                expected = len(oracles.preimage_by_enumeration(matrix, blocks,
                                                               list(word_idx)))
                assert preimage_count(chain, lumping, word) == expected, (name, word)
                words_checked += 1
        assert chain.n <= 6
        expected_kappa = oracles.kappa_by_path_pairs(matrix, blocks,
                                                     pair_depth_cap(lumping))
        res = split_merge_index(chain, lumping)
        got = None if math.isinf(res.kappa) else int(res.kappa)
        assert got == expected_kappa, name
    elapsed = time.perf_counter() - t0
    ok = elapsed < 60.0
    assert emit(5, ok, f"{words_checked} words and {len(CORPUS)} indices matched "
                       f"brute force, runtime={elapsed:.1f}s")


def test_criterion_6_randomised_property_suite():
    t0 = time.perf_counter()
    rng_master = np.random.default_rng(20240601)
    no_witness_cases = 0
    for trial in range(50):
        rng = np.random.default_rng(int(rng_master.integers(2**32)))
        n_states = int(rng.integers(3, 9))
        n_blocks = int(rng.integers(2, min(4, n_states - 1) + 1))
        matrix, blocks = oracles.random_sparse_chain(rng, n_states, n_blocks)
        chain = build_chain(matrix, [str(i) for i in range(n_states)])
        lumping = build_lumping(chain, {str(i): BLOCK_NAMES[b]
                                        for i, b in enumerate(blocks)})
        se = check_single_entry(chain, lumping).holds
        kappa = split_merge_index(chain, lumping).kappa
        for k in (2, 3):
            if check_sfs(chain, lumping, k).holds:
                assert se, f"trial {trial}: sfs({k}) without single entry"
        if se:
            assert math.isinf(kappa), f"trial {trial}: single entry with witness"
        if math.isfinite(kappa):
            assert kappa <= pair_depth_cap(lumping), f"trial {trial}"
        for k in (1, 2):
            res = check_strong_lumpable(chain, lumping, k)
            gap = abs(res.rate_bound_upper - res.rate_bound_lower)
            assert (gap <= 1e-9) == res.strong, f"trial {trial}, k={k}"
        seq = [lumped_rate_bounds(chain, lumping, n) for n in range(1, 5)]
        for b in seq:
            assert b.lower <= b.upper + 1e-10, f"trial {trial}"
        for a, b in zip(seq, seq[1:]):
            assert a.lower <= b.lower + 1e-10, f"trial {trial}"
            assert b.upper <= a.upper + 1e-10, f"trial {trial}"
        if math.isinf(kappa):
            no_witness_cases += 1
            cap = (chain.n - lumping.n_blocks + 1) ** 2
            traj = sample_trajectory(chain, 5000, seed=trial)
            for w in range(100):
                window = traj.states[50 * w:50 * (w + 1)]
                word = [lumping.map[s] for s in window]
                assert preimage_count(chain, lumping, word) <= cap, f"trial {trial}"
    elapsed = time.perf_counter() - t0
    ok = elapsed < 120.0
    assert emit(6, ok, f"50 random chains checked ({no_witness_cases} without "
                       f"witness), runtime={elapsed:.1f}s")


def test_criterion_7_statistical_suite():
    t0 = time.perf_counter()
    details = []

    for name in ("lossy_strong2", "weak_not_strong"):
        chain, lumping = parse_model(model_path(name))
        est = blackwell_entropy_estimate(chain, lumping, steps=60_000, seed=2718)
        sandwich = lumped_rate_bounds(chain, lumping, 8)
        assert sandwich.lower - 3 * est.stderr <= est.estimate \
            <= sandwich.upper + 3 * est.stderr, name
        details.append(f"{name}: blackwell={est.estimate:.4f}+/-{est.stderr:.4f} "
                       f"in [{sandwich.lower:.4f},{sandwich.upper:.4f}]")

    from lumpchain import occurrence_rate_check
    chain, lumping = parse_model(model_path("lossy_strong2"))
    bound = entropy_loss_bound(chain, lumping)
    w = bound.witness
    pattern = (w.check_state,) + w.path_a + (w.hat_state,)
    res = occurrence_rate_check(chain, pattern, length=100_000, seeds=range(10))
    assert res.passed, res
    details.append(f"occurrence rate {res.empirical_rate:.4f} >= "
                   f"{res.bound:.4f} - {res.slack:.4f}")

    threshold = 1.0 + (2.0 ** bound.alpha - 1.0) / 2.0
    for seed in range(3):
        traj = sample_trajectory(chain, 2000, seed=seed)
        word = [lumping.map[s] for s in traj.states]
        count = preimage_count(chain, lumping, word)
        growth = 2.0 ** (math.log2(count) / 2000)
        assert growth >= threshold, (seed, growth, threshold)
    details.append(f"growth at n=2000 >= {threshold:.5f}")

    elapsed = time.perf_counter() - t0
    ok = elapsed < 300.0
    assert emit(7, ok, "; ".join(details) + f"; runtime={elapsed:.1f}s")
