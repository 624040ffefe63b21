"""Cyclic design loops that drive autocorrelation side-lobes toward zero.

Four variants share one cycle: build the convolution matrix of the current
sequence, compute an orthonormal target factor, move every element to the
center of its target points, optionally project onto the amplitude
constraint, and stop once the sequence displacement drops below epsilon.

The variants differ in the center rule and in how the factor is obtained:

* PMQA: exact factor, per-element smallest enclosing circle solved by
  iterated quadratic programming.
* PMAR: exact factor, bounding-rectangle center.
* POCA: exact factor, midpoint of the dictionary-order extremes.
* RPOCA: sketched rank-S factor, same dictionary-order rule. The sketch
  misses the complement of its subspace, so the target points combine the
  sketched factor with the untouched complement of the current matrix;
  with S = Q this reduces exactly to POCA. A fresh sketch is drawn each
  cycle from a seed-determined stream, which keeps runs reproducible.

Element updates within one sweep all consume the same factor; the merge
order is the element order, so runs are deterministic.
"""

from __future__ import annotations

from collections import namedtuple
from dataclasses import dataclass, field, replace

import numpy as np

from . import chaos
from .core import (ComplexSequence, MetricsReport, as_samples, autocorrelation,
                   barker13, chu, compute_metrics, golomb)
from .factorization import (ConvolutionMatrix, exact_unitary_factor,
                            paired_position_blocks, randomized_unitary_factor)
from .geometry import qp_circle

DEFAULT_EPSILON = 1e-12
DEFAULT_MAX_ITERATIONS = 10000
DEFAULT_QP_DELTA = 1e-9

ALGORITHMS = ("PMQA", "PMAR", "POCA", "RPOCA")

TraceEntry = namedtuple("TraceEntry", ["psl", "isl", "mpcl", "delta"])


@dataclass(frozen=True)
class Constraint:
    """Amplitude constraint applied after each sweep."""

    kind: str = "none"
    a: float | None = None

    def __post_init__(self):
        if self.kind not in ("none", "unimodular", "papr"):
            raise ValueError(f"unknown constraint kind {self.kind!r}")
        if self.kind == "papr":
            if self.a is None or self.a < 1.0:
                raise ValueError("papr bound a must be at least 1")
        elif self.a is not None:
            raise ValueError(f"constraint {self.kind!r} takes no bound")


@dataclass(frozen=True)
class InitSpec:
    """Initialization recipe: a named classic sequence, a seeded random
    draw on the unit circle, a chaotic orbit, or an explicit sequence."""

    kind: str
    seed: int | None = None
    params: chaos.ChaoticParams | None = None
    encoding: str = "raw"
    sequence: ComplexSequence | None = None

    def __post_init__(self):
        kinds = ("golomb", "chu", "barker13", "random", "modified_bernoulli", "explicit")
        if self.kind not in kinds:
            raise ValueError(f"unknown init kind {self.kind!r}")
        if self.kind == "random" and self.seed is None:
            raise ValueError("random init needs a seed")
        if self.kind == "modified_bernoulli":
            if self.params is None or self.params.variant != "modified":
                raise ValueError("chaotic init needs modified-map parameters")
            if self.encoding not in ("raw", "phase"):
                raise ValueError(f"unknown encoding {self.encoding!r}")
        if self.kind == "explicit" and self.sequence is None:
            raise ValueError("explicit init needs a sequence")


@dataclass(frozen=True)
class SolverConfig:
    algorithm: str
    N: int
    Q: int
    init: InitSpec
    epsilon: float = DEFAULT_EPSILON
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    constraint: Constraint = field(default_factory=Constraint)
    qp_delta: float = DEFAULT_QP_DELTA
    sketch_s: int | None = None
    sketch_seed: int | None = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if not 2 <= self.Q <= self.N:
            raise ValueError(f"Q must satisfy 2 <= Q <= N, got Q={self.Q}, N={self.N}")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be nonnegative")
        if self.qp_delta <= 0.0:
            raise ValueError("qp_delta must be positive")
        if self.algorithm == "RPOCA":
            if self.sketch_s is None or self.sketch_seed is None:
                raise ValueError("RPOCA needs sketch_s and sketch_seed")
            if not 1 <= self.sketch_s <= self.Q:
                raise ValueError("sketch_s must satisfy 1 <= S <= Q")
        elif self.sketch_s is not None or self.sketch_seed is not None:
            raise ValueError("sketch parameters only apply to RPOCA")
        if self.init.kind == "barker13" and self.N != 13:
            raise ValueError("barker13 init requires N = 13")
        if self.init.kind == "explicit" and len(self.init.sequence) != self.N:
            raise ValueError("explicit init length disagrees with N")


@dataclass(frozen=True)
class DesignResult:
    sequence: ComplexSequence
    iterations_used: int
    converged: bool
    trace: list
    metrics: MetricsReport
    psl_initial: float


def build_initialization(config: SolverConfig) -> ComplexSequence:
    """Materialize the configured initial sequence."""
    init = config.init
    if init.kind == "golomb":
        return golomb(config.N)
    if init.kind == "chu":
        return chu(config.N)
    if init.kind == "barker13":
        return barker13()
    if init.kind == "random":
        rng = np.random.default_rng(init.seed)
        return ComplexSequence(np.exp(2j * np.pi * rng.random(config.N)))
    if init.kind == "modified_bernoulli":
        return chaos.chaotic_init(init.params, config.N, init.encoding)
    return init.sequence


def apply_constraint(x, constraint: Constraint) -> ComplexSequence:
    """Project a sequence onto the constraint set (elementwise radial)."""
    return ComplexSequence(_project(as_samples(x), constraint))


def _project(arr: np.ndarray, constraint: Constraint) -> np.ndarray:
    if constraint.kind == "none":
        return arr
    mag = np.abs(arr)
    if constraint.kind == "unimodular":
        safe = np.where(mag == 0.0, 1.0, mag)
        return np.where(mag == 0.0, 1.0 + 0j, arr / safe)
    over = mag > constraint.a
    if not np.any(over):
        return arr
    return np.where(over, constraint.a * arr / np.where(over, mag, 1.0), arr)


def stop_check(xt_old, xt_new, epsilon: float) -> bool:
    """True once the convolution matrices differ by less than epsilon in
    the entrywise max norm. Each element repeats identically per column,
    so the norm equals max_n |x_new[n] - x_old[n]|."""
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    if isinstance(xt_old, ConvolutionMatrix) and isinstance(xt_new, ConvolutionMatrix):
        if xt_old.shape != xt_new.shape:
            raise ValueError("shape mismatch")
        a, b = xt_old.x, xt_new.x
    else:
        a = np.asarray(xt_old)
        b = np.asarray(xt_new)
        if a.shape != b.shape:
            raise ValueError("shape mismatch")
    return float(np.max(np.abs(b - a))) < epsilon


def _centers_lexmid(mu: np.ndarray) -> np.ndarray:
    # dictionary-order extremes per row: imaginary part decides, ties fall
    # to the real part; a full sort is never needed
    re = mu.real
    im = mu.imag
    hi_re = np.where(im == im.max(axis=1, keepdims=True), re, -np.inf)
    lo_re = np.where(im == im.min(axis=1, keepdims=True), re, np.inf)
    rows = np.arange(mu.shape[0])
    hi = mu[rows, np.argmax(hi_re, axis=1)]
    lo = mu[rows, np.argmin(lo_re, axis=1)]
    return (lo + hi) / 2.0


def _centers_rectangle(mu: np.ndarray) -> np.ndarray:
    return ((mu.real.max(axis=1) + mu.real.min(axis=1))
            + 1j * (mu.imag.max(axis=1) + mu.imag.min(axis=1))) / 2.0


def _sweep_exact(x: np.ndarray, config: SolverConfig) -> np.ndarray:
    xt = ConvolutionMatrix(x, config.Q)
    factor = exact_unitary_factor(xt)
    scale = np.sqrt(config.N)
    if config.algorithm == "PMQA":
        mu = factor.position_values(scale)
        out = np.empty(config.N, dtype=np.complex128)
        for n in range(config.N):
            out[n] = qp_circle(mu[n], delta=config.qp_delta).center
        return out
    out = np.empty(config.N, dtype=np.complex128)
    rule = _centers_rectangle if config.algorithm == "PMAR" else _centers_lexmid
    for start, block in factor.position_blocks(scale):
        out[start:start + block.shape[0]] = rule(block)
    return out


def _sweep_sketched(x: np.ndarray, config: SolverConfig, iter_seed: int) -> np.ndarray:
    """One RPOCA sweep: sketched factor on its subspace, identity on the
    complement. Targets are x + sqrt(N) L - X P with P = U1 U1^H."""
    xt = ConvolutionMatrix(x, config.Q)
    factor = randomized_unitary_factor(xt, config.sketch_s, iter_seed)
    xu1 = xt.product(factor.U1)                      # (N+Q-1) x S
    # x + (sqrt(N) L - X P)[positions] with P = U1 U1^H, folded into one
    # positional pass over the combined left factor
    left = np.sqrt(config.N) * factor.U2 - xu1
    out = np.empty(config.N, dtype=np.complex128)
    for start, blk in paired_position_blocks(left, factor.U1, config.N, config.Q):
        stop = start + blk.shape[0]
        out[start:stop] = _centers_lexmid(x[start:stop, None] + blk)
    return out


def _trace_metrics(x: np.ndarray, Q: int):
    pos = autocorrelation(x).positive_lags()
    r0 = pos[0].real
    side = np.abs(pos[1:])
    psl = float(side.max())
    isl = float(np.sum(side ** 2))
    mpcl = float(side[:Q - 1].max() / r0) if r0 != 0.0 else np.inf
    return psl, isl, mpcl


def design(config: SolverConfig) -> DesignResult:
    """Run the configured cyclic design loop.

    Returns the final iterate provided its full-band PSL does not exceed
    the initialization's; otherwise falls back to the best recorded
    iterate so the loop never hands back a sequence worse than its start.
    Final metrics are recomputed from the returned sequence.
    """
    x0 = build_initialization(config).samples
    psl_init, _, _ = _trace_metrics(x0, config.Q)
    x = x0.copy()
    trace: list[TraceEntry] = []
    best_psl = psl_init
    best_psl_x = x0
    best_mpcl = np.inf
    best_mpcl_x = None
    best_mpcl_psl = np.inf
    converged = False
    iterations = 0
    seed_stream = None
    if config.algorithm == "RPOCA":
        seed_stream = np.random.default_rng(config.sketch_seed)
    for iterations in range(1, config.max_iterations + 1):
        if config.algorithm == "RPOCA":
            x_new = _sweep_sketched(x, config, int(seed_stream.integers(2 ** 63)))
        else:
            x_new = _sweep_exact(x, config)
        x_new = _project(x_new, config.constraint)
        delta = float(np.max(np.abs(x_new - x)))
        x = x_new
        psl, isl, mpcl = _trace_metrics(x, config.Q)
        trace.append(TraceEntry(psl, isl, mpcl, delta))
        if psl < best_psl:
            best_psl = psl
            best_psl_x = x.copy()
        if mpcl < best_mpcl:
            best_mpcl = mpcl
            best_mpcl_x = x.copy()
            best_mpcl_psl = psl
        if delta < config.epsilon:
            converged = True
            break
    final_psl, _, _ = _trace_metrics(x, config.Q)
    if final_psl <= psl_init:
        chosen = x
    elif best_mpcl_x is not None and best_mpcl_psl <= psl_init:
        chosen = best_mpcl_x
    else:
        chosen = best_psl_x
    seq = ComplexSequence(chosen)
    metrics = compute_metrics(autocorrelation(seq), config.Q)
    return DesignResult(sequence=seq, iterations_used=iterations,
                        converged=converged, trace=trace, metrics=metrics,
                        psl_initial=psl_init)


def with_seed_overrides(config: SolverConfig, seed: int) -> SolverConfig:
    """Copy of the config with every integer seed replaced, used by the
    command line override."""
    init = config.init
    if init.kind == "random":
        init = replace(init, seed=seed)
    updates = {"init": init}
    if config.algorithm == "RPOCA":
        updates["sketch_seed"] = seed
    return replace(config, **updates)
