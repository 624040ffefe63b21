import numpy as np
import pytest

from psldesign import core, mimo
from psldesign.chaos import ChaoticParams
from psldesign.core import ComplexSequence
from psldesign.mimo import (WaveformSet, ccp_statistics, generate_set,
                            welch_audit)
from psldesign.solver import Constraint, InitSpec, SolverConfig


def base_config(n, q, algorithm="POCA", constraint=None, encoding="raw",
                **kw):
    return SolverConfig(
        algorithm=algorithm, N=n, Q=q,
        init=InitSpec(kind="modified_bernoulli",
                      params=ChaoticParams(variant="modified", x0=0.1),
                      encoding=encoding),
        constraint=constraint or Constraint(),
        **kw)


def make_set(members):
    seqs = tuple(ComplexSequence(m) for m in members)
    return WaveformSet(members=seqs, provenance=tuple({} for _ in seqs))


class TestWaveformSet:
    def test_equal_length_required(self):
        with pytest.raises(ValueError):
            make_set([[1, 2], [1, 2, 3]])

    def test_properties(self):
        ws = make_set([[1, 1], [1, -1]])
        assert ws.M == 2
        assert ws.N == 2


class TestCcpStatistics:
    def test_zero_member_pair(self):
        # a zero member is the only way every cross-correlation lag
        # vanishes; nonzero pairs always correlate at some lag
        stats = ccp_statistics(make_set([[1, 1], [0, 0]]))
        assert stats.mean == 0.0
        assert stats.max == 0.0
        assert stats.mean_db == core.DB_FLOOR

    def test_known_pair(self):
        stats = ccp_statistics(make_set([[1, 1], [1, -1]]))
        assert stats.max == pytest.approx(1.0)
        assert stats.mean == pytest.approx(1.0)
        assert stats.pair_count == 1

    def test_matrix_symmetric_with_r0_diagonal(self):
        rng = np.random.default_rng(0)
        members = [rng.standard_normal(8) + 1j * rng.standard_normal(8)
                   for _ in range(3)]
        stats = ccp_statistics(make_set(members))
        assert np.array_equal(stats.matrix, stats.matrix.T)
        for i, m in enumerate(members):
            assert stats.matrix[i, i] == pytest.approx(np.sum(np.abs(m) ** 2))

    def test_purity_recompute(self):
        rng = np.random.default_rng(1)
        members = [rng.standard_normal(10) for _ in range(4)]
        ws = make_set(members)
        a = ccp_statistics(ws)
        b = ccp_statistics(ws)
        assert np.array_equal(a.matrix, b.matrix)
        assert (a.mean, a.max, a.min, a.mean_db) == (b.mean, b.max, b.min, b.mean_db)

    def test_needs_two(self):
        with pytest.raises(ValueError):
            ccp_statistics(make_set([[1, 2]]))


class TestWelchAudit:
    def test_bound_value_unimodular(self):
        ws = make_set([[1, 1], [1, -1]])
        audit = welch_audit(ws, unimodular=True)
        assert audit.bound == pytest.approx(2 * np.sqrt(1 / 5))
        assert audit.ratio >= 1 - 1e-9

    def test_compliance_random_sets(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            m = int(rng.integers(2, 6))
            n = int(rng.integers(2, 24))
            members = [rng.standard_normal(n) + 1j * rng.standard_normal(n)
                       for _ in range(m)]
            audit = welch_audit(make_set(members))
            assert audit.ratio >= 1 - 1e-9

    def test_compliance_unimodular_sets(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            m = int(rng.integers(2, 5))
            n = int(rng.integers(2, 16))
            members = [np.exp(2j * np.pi * rng.random(n)) for _ in range(m)]
            audit = welch_audit(make_set(members), unimodular=True)
            assert audit.ratio >= 1 - 1e-9


class TestGenerateSet:
    def test_duplicate_seeds_rejected(self):
        cfg = base_config(16, 4, max_iterations=5)
        with pytest.raises(ValueError):
            generate_set(2, 16, 4, cfg, [0.37, 0.37])

    def test_seed_count_mismatch(self):
        cfg = base_config(16, 4, max_iterations=5)
        with pytest.raises(ValueError):
            generate_set(3, 16, 4, cfg, [0.1, 0.2])

    def test_m_lower_bound(self):
        cfg = base_config(16, 4, max_iterations=5)
        with pytest.raises(ValueError):
            generate_set(1, 16, 4, cfg, [0.1])

    def test_failed_member_named(self):
        cfg = base_config(16, 4, max_iterations=5)
        with pytest.raises(ValueError, match="member 2"):
            generate_set(2, 16, 4, cfg, [0.1, 7.5])  # second seed out of range

    def test_two_member_design(self):
        cfg = base_config(64, 20, epsilon=1e-12, max_iterations=4000)
        gen = generate_set(2, 64, 20, cfg, [0.31, 0.43])
        assert gen.waveforms.M == 2
        for metrics in gen.member_metrics:
            assert metrics.mpcl <= 1e-8
        assert np.isfinite(gen.stats.mean)
        assert gen.pre_solver_ccp_mean > 0

    def test_seed_sensitivity(self):
        cfg = base_config(32, 8, max_iterations=0)
        gen = generate_set(3, 32, 8, cfg, [0.31, 0.31 + 1e-6, -0.5])
        members = [m.samples for m in gen.waveforms.members]
        for i in range(3):
            for j in range(i + 1, 3):
                assert np.max(np.abs(members[i] - members[j])) > 1e-3

    def test_forty_member_set_statistics(self):
        cfg = base_config(100, 39, epsilon=1e-12, max_iterations=120)
        seeds = list(np.linspace(0.05, 0.9, 40))
        gen = generate_set(40, 100, 39, cfg, seeds)
        assert np.isfinite(gen.stats.mean)
        r0s = [core.autocorrelation(m).lag(0).real for m in gen.waveforms.members]
        iu, ju = np.triu_indices(40, k=1)
        normalized = gen.stats.matrix[iu, ju] / np.sqrt(
            np.array(r0s)[iu] * np.array(r0s)[ju])
        assert np.mean(normalized) < 1.0
        audit = welch_audit(gen.waveforms)
        assert audit.ratio >= 1 - 1e-9
        assert gen.post_solver_ccp_mean > 0
        for seed, entry in zip(seeds, gen.waveforms.provenance):
            assert entry["seed"] == seed
            assert entry["config"].init.params.x0 == seed
