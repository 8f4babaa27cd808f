import numpy as np
import pytest

from chainalign.chain import SolverConfig
from chainalign.lexical import SimilarityConfig
from chainalign.pipeline import align, build_chain

ALL_SETTINGS = [
    (method, mode)
    for method in ("iterative", "steady-state")
    for mode in ("edge-confidence", "baseline-sf")
]


class TestSelfAlignment:
    @pytest.mark.parametrize("method,mode", ALL_SETTINGS)
    def test_fixture_self_alignment_is_identity(self, fixture_graph, method, mode):
        cfg = SolverConfig(method=method, chain_mode=mode)
        alignment, result = align(fixture_graph, fixture_graph, solver_cfg=cfg)
        assert alignment.pairs() == {(t, t) for t in fixture_graph.terms}
        assert result.converged

    def test_identity_pairs_score_full_confidence(self, birds):
        alignment, _ = align(birds, birds)
        top = max(c.confidence for c in alignment.correspondences)
        assert top == 1.0


class TestAlignMetadata:
    def test_settings_recorded(self, birds):
        sim = SimilarityConfig(gamma=0.6)
        cfg = SolverConfig(method="steady-state", norm_mode="formula")
        alignment, _ = align(birds, birds, sim, cfg, min_confidence=0.1)
        md = alignment.metadata
        assert md["gamma"] == 0.6
        assert md["method"] == "steady-state"
        assert md["norm_mode"] == "formula"
        assert md["damping"] == 0.85
        assert md["min_confidence"] == 0.1

    def test_solver_report_included(self, birds):
        alignment, result = align(birds, birds)
        assert alignment.metadata["iterations"] == result.iterations
        assert alignment.metadata["converged"] is True


class TestBuildChain:
    def test_damped_chain_is_stochastic_and_aperiodic(self, birds):
        chain = build_chain(birds, birds, SimilarityConfig(), SolverConfig())
        assert chain.stochastic
        for i, row in enumerate(chain.transitions):
            assert sum(w for _, w in row) == pytest.approx(1.0, abs=1e-9)
            assert any(c == i for c, _ in row)  # damping adds self-weight

    def test_undamped_chain_skips_transform(self, birds):
        cfg = SolverConfig()
        plain = build_chain(birds, birds, SimilarityConfig(), cfg, damped=False)
        damped = build_chain(birds, birds, SimilarityConfig(), cfg, damped=True)
        assert plain.to_dense() != pytest.approx(damped.to_dense())

    def test_solvers_agree_on_fixture_chains(self, fixture_graph):
        sim = SimilarityConfig()
        for mode in ("edge-confidence", "baseline-sf"):
            it = align(fixture_graph, fixture_graph, sim,
                       SolverConfig(chain_mode=mode, epsilon=1e-12))[1]
            ss = align(fixture_graph, fixture_graph, sim,
                       SolverConfig(chain_mode=mode, method="steady-state"))[1]
            gap = np.max(np.abs(it.distribution - ss.distribution))
            assert gap < 1e-6
