"""Waveform sets for MIMO operation: chaotic seeds, independent design
runs per member, pairwise cross-correlation statistics, and the Welch
lower-bound audit.

Members are optimized independently; low cross-correlation is inherited
from the seed diversity of the chaotic map, not jointly enforced.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .core import (DB_FLOOR, autocorrelation, ccp, compute_metrics,
                   welch_bound)
from .solver import InitSpec, SolverConfig, build_initialization, design


@dataclass(frozen=True)
class WaveformSet:
    """M equal-length sequences plus the provenance of each design run."""

    members: tuple
    provenance: tuple

    def __post_init__(self):
        if len(self.members) < 1:
            raise ValueError("a waveform set needs at least one member")
        n = len(self.members[0])
        if any(len(m) != n for m in self.members):
            raise ValueError("all members must share one length")

    @property
    def M(self) -> int:
        return len(self.members)

    @property
    def N(self) -> int:
        return len(self.members[0])


@dataclass(frozen=True)
class CCPStatistics:
    """Pairwise cross-correlation peaks over the M(M-1)/2 unordered pairs.

    The matrix diagonal carries each member's self peak (its r_0). The dB
    figures normalize each pair by the geometric mean of the two r_0
    values and clamp underflows at DB_FLOOR.
    """

    matrix: np.ndarray
    mean: float
    max: float
    min: float
    mean_db: float
    max_db: float
    min_db: float
    pair_count: int


@dataclass(frozen=True)
class WelchAudit:
    """Largest observed correlation side-lobe against the theoretical
    floor; ratio below one would indicate a computation bug."""

    c_max: float
    bound: float
    ratio: float
    unimodular: bool


@dataclass(frozen=True)
class GeneratedSet:
    waveforms: WaveformSet
    results: tuple
    stats: CCPStatistics
    member_metrics: tuple
    pre_solver_ccp_mean: float
    post_solver_ccp_mean: float


def ccp_statistics(waveforms: WaveformSet) -> CCPStatistics:
    """Cross-correlation peak statistics of every unordered pair."""
    members = waveforms.members
    m = len(members)
    if m < 2:
        raise ValueError("statistics need at least two members")
    matrix = np.zeros((m, m))
    r0 = np.array([autocorrelation(s).lag(0).real for s in members])
    for i in range(m):
        matrix[i, i] = r0[i]
        for j in range(i + 1, m):
            matrix[i, j] = matrix[j, i] = ccp(members[i], members[j])
    iu, ju = np.triu_indices(m, k=1)
    pairs = matrix[iu, ju]
    norms = np.sqrt(r0[iu] * r0[ju])
    with np.errstate(divide="ignore", invalid="ignore"):
        normalized = np.where(norms > 0.0, pairs / norms, 0.0)

    def to_db(v: float) -> float:
        return DB_FLOOR if v <= 0.0 else max(DB_FLOOR, 20.0 * np.log10(v))

    return CCPStatistics(matrix=matrix,
                         mean=float(pairs.mean()),
                         max=float(pairs.max()),
                         min=float(pairs.min()),
                         mean_db=to_db(float(normalized.mean())),
                         max_db=to_db(float(normalized.max())),
                         min_db=to_db(float(normalized.min())),
                         pair_count=pairs.size)


def welch_audit(waveforms: WaveformSet, unimodular: bool = False) -> WelchAudit:
    """Compare the set's worst correlation side-lobe with the Welch floor.

    The plain bound assumes unit-power members, so members are power
    normalized before measuring unless the unimodular form is requested.
    """
    members = [m.samples for m in waveforms.members]
    if len(members) < 2:
        raise ValueError("the audit needs at least two members")
    n = waveforms.N
    if not unimodular:
        members = [x / np.sqrt(np.sum(np.abs(x) ** 2)) for x in members]
    c_max = 0.0
    for i, x in enumerate(members):
        side = np.abs(autocorrelation(x).positive_lags()[1:])
        if side.size:
            c_max = max(c_max, float(side.max()))
        for y in members[i + 1:]:
            c_max = max(c_max, ccp(x, y))
    bound = welch_bound(waveforms.M, n, unimodular)
    ratio = c_max / bound if bound > 0.0 else np.inf
    return WelchAudit(c_max=c_max, bound=bound, ratio=ratio, unimodular=unimodular)


def generate_set(M: int, N: int, Q: int, base_config: SolverConfig,
                 seed_list) -> GeneratedSet:
    """Design an M-member set from distinct chaotic initial conditions.

    ``base_config`` supplies the algorithm, window, constraint and the
    chaotic template; each member run replaces the template's initial
    condition with its own seed. A failed member run aborts the whole set
    with an error naming the member.
    """
    seeds = list(seed_list)
    if M < 2:
        raise ValueError("a set needs M >= 2 members")
    if len(seeds) != M:
        raise ValueError(f"expected {M} seeds, got {len(seeds)}")
    if len(set(seeds)) != M:
        raise ValueError("seeds must be pairwise distinct")
    if base_config.N != N or base_config.Q != Q:
        raise ValueError("base_config disagrees with the stated N, Q")
    if base_config.init.kind != "modified_bernoulli":
        raise ValueError("set generation seeds the chaotic initialization")
    results = []
    inits = []
    configs = []
    for idx, seed in enumerate(seeds, start=1):
        try:
            params = replace(base_config.init.params, x0=float(seed))
            cfg = replace(base_config,
                          init=InitSpec(kind="modified_bernoulli", params=params,
                                        encoding=base_config.init.encoding))
            configs.append(cfg)
            inits.append(build_initialization(cfg))
            results.append(design(cfg))
        except ValueError as err:
            raise ValueError(f"member {idx} (seed {seed}) failed: {err}") from err
    members = tuple(r.sequence for r in results)
    provenance = tuple({"seed": s, "config": c} for s, c in zip(seeds, configs))
    waveforms = WaveformSet(members=members, provenance=provenance)
    stats = ccp_statistics(waveforms)
    pre = ccp_statistics(WaveformSet(members=tuple(inits), provenance=provenance))
    metrics = tuple(compute_metrics(autocorrelation(m), Q) for m in members)
    return GeneratedSet(waveforms=waveforms, results=tuple(results),
                        stats=stats, member_metrics=metrics,
                        pre_solver_ccp_mean=pre.mean,
                        post_solver_ccp_mean=stats.mean)
