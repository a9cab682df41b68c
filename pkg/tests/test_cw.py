import numpy as np
import pytest

from ampgraph import (
    AmpGraph,
    DynkinSpec,
    check_chain_k0,
    cw_kk_summary,
    flag_graph,
    skeleton_filtration,
    summarize_filtration,
)
from ampgraph.ktheory import intmat

from test_coxeter import all_specs


GR = DynkinSpec(3, frozenset({2}))


def test_skeleton_filtration_grassmannian():
    filt = skeleton_filtration(GR)
    assert filt.top == 4
    assert [len(lv.vertices) for lv in filt.levels] == [1, 2, 4, 5, 6]
    assert filt.level(4) == filt.full == flag_graph(GR)
    x3 = filt.level(3)
    assert x3.vertices == ("e", "s2", "s1s2", "s3s2", "s1s3s2")
    assert sum(1 for _ in x3.families()) == 5
    x2 = filt.level(2)
    assert x2.vertices == ("e", "s2", "s1s2", "s3s2")
    assert [(a, b) for a, b, _ in x2.families()] == [
        ("e", "s2"),
        ("s2", "s1s2"),
        ("s2", "s3s2"),
    ]
    assert filt.level(0).vertices == ("e",)


def test_top_cell_quotient_is_next_skeleton():
    filt = skeleton_filtration(GR)
    assert filt.full.quotient(("s2s1s3s2",)) == filt.level(3)


@pytest.mark.parametrize("spec", all_specs(), ids=str)
def test_filtration_consistency(spec):
    filt = skeleton_filtration(spec)
    for k in range(filt.top):
        upper = filt.level(k + 1)
        removed = tuple(
            v for v in upper.vertices if filt.lengths[v] == k + 1
        )
        assert upper.quotient(removed) == filt.level(k)


@pytest.mark.parametrize(
    "rank, texts",
    [
        (1, ["K^1 (+) C", "C^2"]),
        (2, ["K^1 (+) C*(X1)", "K^2 (+) C", "C^3"]),
        (3, ["K^1 (+) C*(X2)", "K^2 (+) C*(X1)", "K^3 (+) C", "C^4"]),
    ],
)
def test_projective_space_summaries(rank, texts):
    summary = cw_kk_summary(DynkinSpec(rank, frozenset({1})))
    assert [r.text for r in summary.records] == texts
    assert summary.report.ok
    assert str(summary) == "  ->  ".join(texts)


def test_grassmannian_summary():
    summary = cw_kk_summary(GR)
    assert [r.text for r in summary.records] == [
        "K^1 (+) C*(X3)",
        "K^2 (+) C*(X2)",
        "K^4 (+) C*(X1)",
        "K^5 (+) C",
        "C^6",
    ]
    assert [r.compacts for r in summary.records] == [1, 2, 4, 5, 5]
    assert [r.level for r in summary.records] == [3, 2, 1, 0, None]
    assert summary.report.ok
    assert summary.chain.sinks == ("s2s1s3s2", "s1s3s2", "s1s2", "s3s2", "s2")
    filt = skeleton_filtration(GR)
    for record in summary.records[:-1]:
        assert record.vertices == filt.level(record.level).vertices


def test_summary_chain_k0_is_invertible():
    summary = cw_kk_summary(GR)
    res = check_chain_k0(summary.chain)
    n = 6
    eye = intmat([[int(i == j) for j in range(n)] for i in range(n)])
    assert np.array_equal(res.forward @ res.backward, eye)
    assert np.array_equal(res.backward @ res.forward, eye)


def test_single_point_tower():
    point = AmpGraph.from_edges(("pt",))
    summary = summarize_filtration(point, (point,))
    assert [r.text for r in summary.records] == ["C^1"]
    assert summary.report.ok
    assert summary.chain.steps == ()


def test_cp1_chain_terms():
    summary = cw_kk_summary(DynkinSpec(1, frozenset({1})))
    assert summary.chain.iota_terms == ("[iota_1]", "[s_1]")
    assert summary.chain.pi_terms == ("[pi_1]", "[q_1]")
