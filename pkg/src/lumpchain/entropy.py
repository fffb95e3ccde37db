"""Entropy functionals for stationary chains and their lumped images.

All values are in bits (binary logarithm) with the convention 0*log2(0) = 0.
Quantities over lumped words are exact: a forward pass propagates, for every
block word of positive probability, the joint mass vector over the hidden
state, so no sampling is involved. Conditional distributions are only formed
where the conditioning event has mass above ``MASS_EPS``; lighter events are
dropped, matching the zero-times-log-zero convention.

The forward pass enumerates block words, so its cost is bounded by
|blocks|^horizon times the squared state count. The default budget admits
horizons up to 12 on chains with at most 4 blocks; both caps can be raised
explicitly by callers who accept the cost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .chain import MarkovChain
from .errors import HorizonTooLarge, NotADistribution, ZeroMassUpdate

if TYPE_CHECKING:
    from .lumping import Lumping

MASS_EPS = 1e-15
DEFAULT_MAX_HORIZON = 12
DEFAULT_MAX_BLOCKS = 4
DIST_SUM_TOL = 1e-9


@dataclass(frozen=True)
class EntropyBounds:
    """Per-horizon sandwich on the entropy rate of the lumped process.

    ``lower`` conditions the next block on the previous blocks and the exact
    initial state, ``upper`` only on the previous blocks. The lumped rate sits
    between the two, and the sandwich tightens as the horizon grows.
    """

    horizon: int
    lower: float
    upper: float


@dataclass(frozen=True)
class LossInterval:
    """Interval bracketing the per-step information loss of a lumping."""

    horizon: int
    loss_lower: float
    loss_upper: float


@dataclass(frozen=True)
class BlackwellEstimate:
    estimate: float
    stderr: float
    caveat: str


def _plogp(p: np.ndarray) -> float:
    """-sum p*log2(p) over the positive entries."""
    p = p[p > 0]
    if p.size == 0:
        return 0.0
    return float(-(p * np.log2(p)).sum())


def shannon_entropy(dist) -> float:
    """Entropy of a probability vector in bits."""
    p = np.asarray(dist, dtype=float).ravel()
    if np.any(p < 0):
        raise NotADistribution("negative probability entry")
    if abs(p.sum() - 1.0) > DIST_SUM_TOL:
        raise NotADistribution(f"probabilities sum to {p.sum()!r}")
    return _plogp(p)


def conditional_entropy(joint) -> float:
    """H(column variable | row variable) from a joint probability matrix."""
    J = np.asarray(joint, dtype=float)
    if J.ndim != 2:
        raise NotADistribution("joint must be a matrix")
    if np.any(J < 0):
        raise NotADistribution("negative probability entry")
    if abs(J.sum() - 1.0) > DIST_SUM_TOL:
        raise NotADistribution(f"joint sums to {J.sum()!r}")
    total = 0.0
    for row in J:
        m = row.sum()
        if m <= MASS_EPS:
            continue
        total += m * _plogp(row / m)
    return total


def chain_entropy_rate(chain: MarkovChain) -> float:
    """Entropy rate of the chain itself: sum_x mu(x) H(P(x, .))."""
    mu = chain.stationary
    P = chain.transition
    return float(sum(mu[x] * _plogp(P[x]) for x in range(chain.n)))


def block_entropy(chain: MarkovChain, n: int) -> float:
    """Entropy of a stationary length-n state word: H(mu) + (n-1) * rate."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _plogp(np.asarray(chain.stationary)) + (n - 1) * chain_entropy_rate(chain)


def _check_budget(lumping: "Lumping", horizon: int,
                  max_horizon: int, max_blocks: int) -> None:
    if horizon > max_horizon:
        raise HorizonTooLarge(f"horizon {horizon} exceeds cap {max_horizon}")
    if lumping.n_blocks > max_blocks:
        raise HorizonTooLarge(
            f"{lumping.n_blocks} blocks exceed cap {max_blocks} for path enumeration")


def lumped_forward(chain: MarkovChain, lumping: "Lumping", rho: np.ndarray,
                   n_symbols: int, first_is_current: bool) -> dict[tuple[int, ...], np.ndarray]:
    """Joint mass vectors over the hidden state for every positive block word.

    Starting from ``rho`` as the state distribution at time 0, returns a dict
    mapping a length-``n_symbols`` block-index word to the vector whose x-th
    entry is the joint probability of the word and the hidden state x at the
    word's last instant. With ``first_is_current`` the word starts with the
    block of the time-0 state; otherwise every symbol costs one transition.
    """
    P = chain.transition
    members = lumping.member_indices
    if first_is_current:
        dists = {(b,): _mask(rho, members[b]) for b in range(lumping.n_blocks)}
        dists = {w: v for w, v in dists.items() if v.sum() > 0}
        remaining = n_symbols - 1
    else:
        dists = {(): rho}
        remaining = n_symbols
    for _ in range(remaining):
        nxt_dists: dict[tuple[int, ...], np.ndarray] = {}
        for word, vec in dists.items():
            pushed = vec @ P
            for b in range(lumping.n_blocks):
                v = _mask(pushed, members[b])
                if v.sum() > 0:
                    nxt_dists[word + (b,)] = v
        dists = nxt_dists
    return dists


def _mask(vec: np.ndarray, member_idx: np.ndarray) -> np.ndarray:
    out = np.zeros_like(vec)
    out[member_idx] = vec[member_idx]
    return out


def _next_block_mass(vec: np.ndarray, chain: MarkovChain, lumping: "Lumping") -> np.ndarray:
    pushed = vec @ chain.transition
    return np.array([pushed[idx].sum() for idx in lumping.member_indices])


def lumped_block_entropy(chain: MarkovChain, lumping: "Lumping", n: int,
                         max_horizon: int = DEFAULT_MAX_HORIZON,
                         max_blocks: int = DEFAULT_MAX_BLOCKS) -> float:
    """Entropy of a stationary length-n block word, by exact forward pass."""
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_budget(lumping, n, max_horizon, max_blocks)
    dists = lumped_forward(chain, lumping, chain.stationary, n, first_is_current=True)
    masses = np.array([v.sum() for v in dists.values()])
    return _plogp(masses)


def lumped_rate_bounds(chain: MarkovChain, lumping: "Lumping", n: int,
                       max_horizon: int = DEFAULT_MAX_HORIZON,
                       max_blocks: int = DEFAULT_MAX_BLOCKS) -> EntropyBounds:
    """Sandwich on the lumped entropy rate at horizon n.

    upper = H(next block | previous n blocks), lower additionally conditions
    on the exact state at time 0. Both are computed from forward-pass joint
    distributions, not estimated.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    _check_budget(lumping, n, max_horizon, max_blocks)
    mu = chain.stationary

    upper = 0.0
    for vec in lumped_forward(chain, lumping, mu, n, first_is_current=True).values():
        m = vec.sum()
        if m <= MASS_EPS:
            continue
        upper += m * _plogp(_next_block_mass(vec, chain, lumping) / m)

    lower = 0.0
    eye = np.eye(chain.n)
    for x0 in range(chain.n):
        if mu[x0] <= MASS_EPS:
            continue
        for vec in lumped_forward(chain, lumping, eye[x0], n - 1,
                                  first_is_current=False).values():
            m = vec.sum()
            if m <= MASS_EPS:
                continue
            lower += mu[x0] * m * _plogp(_next_block_mass(vec, chain, lumping) / m)
    return EntropyBounds(horizon=n, lower=float(lower), upper=float(upper))


def conditional_entropy_rate_estimate(chain: MarkovChain, lumping: "Lumping", n: int,
                                      max_horizon: int = DEFAULT_MAX_HORIZON,
                                      max_blocks: int = DEFAULT_MAX_BLOCKS) -> LossInterval:
    """Interval for the information lost per step by observing blocks only.

    Subtracts the horizon-n rate sandwich from the chain rate. The lower edge
    is clamped at zero: at small horizons the upper bound on the lumped rate
    can exceed the chain rate, while the true loss is never negative.
    """
    rate = chain_entropy_rate(chain)
    bounds = lumped_rate_bounds(chain, lumping, n, max_horizon, max_blocks)
    return LossInterval(horizon=n,
                        loss_lower=max(0.0, rate - bounds.upper),
                        loss_upper=float(rate - bounds.lower))


_BLACKWELL_CAVEAT = ("time average assumes the belief process is ergodic; "
                     "this is not verified")


def blackwell_entropy_estimate(chain: MarkovChain, lumping: "Lumping", steps: int,
                               burn_in: int | None = None, seed: int = 0,
                               batches: int = 50) -> BlackwellEstimate:
    """Monte Carlo estimate of the lumped entropy rate via the belief chain.

    The belief is the conditional distribution of the hidden state given the
    observed blocks. Each step predicts one transition, scores the entropy of
    the induced block distribution, draws the next block from it and
    conditions the belief on the draw. The estimate is the time average of
    the per-step scores after burn-in; the standard error comes from batch
    means over ``batches`` equal slices. Fixed seeds give identical output.
    """
    if burn_in is None:
        burn_in = steps // 10
    if not 0 <= burn_in < steps:
        raise ValueError("need steps > burn_in >= 0")
    rng = np.random.default_rng(seed)
    P = chain.transition
    members = lumping.member_indices
    masks = [np.zeros(chain.n, dtype=bool) for _ in range(lumping.n_blocks)]
    for b, idx in enumerate(members):
        masks[b][idx] = True

    w = np.array(chain.stationary, dtype=float)
    uniforms = rng.random(steps)
    vals = np.empty(steps - burn_in)
    for t in range(steps):
        pred = w @ P
        r = np.array([pred[m].sum() for m in masks])
        if t >= burn_in:
            vals[t - burn_in] = _plogp(r)
        cum = np.cumsum(r)
        y = int(np.searchsorted(cum, uniforms[t] * cum[-1], side="right"))
        y = min(y, lumping.n_blocks - 1)
        if r[y] < 1e-300:
            raise ZeroMassUpdate(f"drawn block {lumping.blocks[y]!r} has underflowed mass")
        w = np.where(masks[y], pred, 0.0) / r[y]

    estimate = float(vals.mean())
    usable = (len(vals) // batches) * batches
    means = vals[:usable].reshape(batches, -1).mean(axis=1)
    stderr = float(means.std(ddof=1) / math.sqrt(batches))
    return BlackwellEstimate(estimate=estimate, stderr=stderr, caveat=_BLACKWELL_CAVEAT)
