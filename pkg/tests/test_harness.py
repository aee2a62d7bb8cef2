import json

import pytest

from hamlab import EnumerationScope, find_remark_witness, parse, verify
from hamlab.conditions import evaluate
from hamlab.connectivity import is_k_strong, is_strong
from hamlab.cycles import hamiltonian_cycle
from hamlab.factor import has_cycle_factor
from hamlab.families import complete
from hamlab.harness import default_threads, explore_problem_1_17, partition_maximal, sharpness_search
from hamlab.registry import REGISTRY, REMARK_CASE


def test_factor_exhaustive_4():
    r = verify("factor-1.4", EnumerationScope(4))
    assert r.digraphs_examined == 4096 and r.conclusion_failures == [] and r.failure_count == 0
    # frozen split, matching the has_factor oracle count over all 4096 labeled digraphs
    assert r.stats == {"has_factor": 1431, "no_factor": 2665, "both_exist": 0, "neither_exists": 0}


def test_manoussakis_exhaustive_4():
    assert REGISTRY["manoussakis-1.12"].hypothesis(complete(4))
    r = verify("manoussakis-1.12", EnumerationScope(4))
    assert r.hypothesis_hits > 0 and r.conclusion_failures == [] and not r.vacuous


def test_twocycle_vacuous():
    for n in (3, 4, 5):
        r = verify("twocycle-3.7", EnumerationScope(n))
        assert r.vacuous and r.hypothesis_hits == 0 and r.conclusion_failures == []


def test_report_schema():
    r = verify("meyniel-1.8", EnumerationScope(3))
    d = json.loads(r.to_json())
    for key in ("theorem_id", "scope", "digraphs_examined", "hypothesis_hits", "conclusion_failures",
                "vacuous", "runtime_ms", "tool_version", "rng_name"):
        assert key in d
    assert d["rng_name"] == "numpy.random.PCG64"
    assert "runtime_ms" not in json.loads(r.to_json(include_runtime=False))


def test_failures_are_persisted_sorted_and_replayable(tmp_path):
    # the remark search treats its witnesses as failures, which exercises the failure path
    scope = EnumerationScope(5, "complement", pair_budget=1)
    r = verify("remark", scope, out_dir=tmp_path, max_failures=4, _case=REMARK_CASE)
    assert r.failure_count > 4 and len(r.conclusion_failures) == 4
    texts = [f["digraph"] for f in r.conclusion_failures]
    assert texts == sorted(texts)
    assert r.persisted == [f"remark-3.4-{i}.dg" for i in range(4)]
    for name, f in zip(r.persisted, r.conclusion_failures):
        D = parse((tmp_path / name).read_text())
        assert REMARK_CASE.evaluate(D).status == 2
        assert f["detail"] == "no Hamiltonian cycle"


def test_thread_count_does_not_change_reports():
    scope = EnumerationScope(5, "complement", pair_budget=2)
    a = verify("manoussakis-1.12", scope, threads=1)
    b = verify("manoussakis-1.12", scope, threads=3)
    assert a.to_json(include_runtime=False) == b.to_json(include_runtime=False)
    scope = EnumerationScope(6, "sampled", sample_count=9000, seed=5)
    a = verify("lemma-3.2", scope, threads=1)
    b = verify("lemma-3.2", scope, threads=2)
    assert a.to_json(include_runtime=False) == b.to_json(include_runtime=False)


def test_env_threads(monkeypatch):
    monkeypatch.setenv("HAMLAB_THREADS", "3")
    assert default_threads() == 3
    monkeypatch.setenv("HAMLAB_THREADS", "lots")
    assert default_threads() == 1
    monkeypatch.delenv("HAMLAB_THREADS")
    assert default_threads() == 1


def test_sampled_scope_echo():
    r = verify("pancyclic-1.16", EnumerationScope(7, "sampled", sample_count=500, seed=3))
    assert r.scope["sampler"] == "condition_m" and r.scope["samples_drawn"] == 500
    r = verify("meyniel-1.8", EnumerationScope(7, "sampled", sample_count=500, seed=3))
    assert r.scope["sampler"] == "density"


def test_unknown_theorem():
    with pytest.raises(KeyError):
        verify("no-such-id", EnumerationScope(3))


def test_remark_witness():
    D = find_remark_witness(5)
    assert is_strong(D) and not is_k_strong(D, 2)
    assert hamiltonian_cycle(D) is None and len(D.non_adjacent_pairs()) == 1
    with pytest.raises(ValueError):
        find_remark_witness(4)


def test_problem_117_small_run_is_deterministic():
    scope = EnumerationScope(5, "complement", pair_budget=2)
    a = explore_problem_1_17(scope)
    b = explore_problem_1_17(scope)
    assert a.label == "open-problem candidate"
    assert a.to_json(include_runtime=False) == b.to_json(include_runtime=False)


def test_sharpness_exhibits():
    assert sharpness_search(n_max=4) == []
    found = sharpness_search(n_max=6)
    assert {e.digraph.order for e in found} == {5, 6}
    for e in found:
        D = e.digraph
        n = D.order
        assert is_k_strong(D, 2) and not has_cycle_factor(D)
        sums = sorted(D.degree(x) + D.degree(y) for x, y in D.non_adjacent_pairs())
        assert len(sums) >= 2 and sums[0] + sums[1] == e.min_pair_pair_sum >= 4 * n - 4
        assert not evaluate(D, "condition_m").satisfied


def test_partition_maximal_has_the_partition():
    D = partition_maximal(3, 2, 1, 1)
    assert D.order == 7 and not has_cycle_factor(D)
