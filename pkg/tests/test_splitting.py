import random

import pytest

from ampgraph import (
    AmpGraph,
    CKElement,
    GeneratorMap,
    OMEGA,
    VerificationFailure,
    build_splitting,
    compose,
    explicit_steps,
    kk_chain,
    multi_sink_splitting,
    prefer_source_star,
    valid_stars,
    verify_split_exact,
)

from helpers import example_graph, random_amplified_dag


def test_valid_stars_example():
    g = example_graph()
    assert valid_stars(g, "v4") == ["v1", "v2", "v3"]
    # v4 is ruled out for sink v5: its in-neighbour v2 cannot reach v5
    assert valid_stars(g, "v5") == ["v1", "v2", "v3"]


def test_valid_stars_requires_sink():
    g = example_graph()
    with pytest.raises(ValueError, match="not a sink"):
        valid_stars(g, "v1")
    with pytest.raises(ValueError):
        valid_stars(g, "nope")


def test_valid_stars_can_be_empty():
    # a cycle feeding nothing into the isolated sink leaves no candidates
    g = AmpGraph.from_edges(("a", "b", "s"), [("a", "b"), ("b", "a")])
    assert valid_stars(g, "s") == []


def test_build_splitting_all_stars_verify():
    g = example_graph()
    expected_aug = {"v1": (), "v2": (("v1", "v4"),), "v3": (("v1", "v4"),)}
    for star in ("v1", "v2", "v3"):
        sd = build_splitting(g, "v4", star)
        assert sd.augmented == expected_aug[star]
        report = verify_split_exact(sd)
        assert report.ok
        for name in (
            "vertex-projections",
            "vertex-orthogonality",
            "adjoint-compatibility",
            "ck1",
            "ck2",
            "unital",
            "gauge-homogeneity",
            "quotient-map",
            "section-identity",
        ):
            assert report.check(name).passed, name


def test_build_splitting_rejects_bad_star():
    g = example_graph()
    with pytest.raises(ValueError, match="not a valid choice"):
        build_splitting(g, "v4", "v5")
    with pytest.raises(ValueError, match="not a sink"):
        build_splitting(g, "v1", "v2")
    finite = AmpGraph.from_edges(("a", "b"), [("a", "b", 1)])
    with pytest.raises(ValueError, match="amplified"):
        build_splitting(finite, "b", None)


def test_splitting_section_formula_star_v2():
    sd = build_splitting(example_graph(), "v4", "v2")
    assert sd.sigma.render_table() == {
        "p[v1]": "p[v1]",
        "p[v2]": "p[v2] + p[v4]",
        "p[v3]": "p[v3]",
        "p[v5]": "p[v5]",
        "s[v1>v2#i]": "s[v1>v2#i] + s[v1>v4#i]",
        "s[v1>v3#i]": "s[v1>v3#i]",
        "s[v3>v5#i]": "s[v3>v5#i]",
    }
    assert sd.working.multiplicity("v1", "v4") is OMEGA
    assert sd.original.multiplicity("v1", "v4") == 0


def test_embedding_section_is_inclusion():
    g = example_graph()
    sd = build_splitting(g, "v4", None)
    assert sd.working == g
    assert sd.sigma == GeneratorMap.inclusion(g.quotient(("v4",)), g)
    report = verify_split_exact(sd)
    assert report.ok
    unital = report.check("unital")
    assert not unital.passed and not unital.required


def test_ideal_kind():
    g = example_graph()
    assert build_splitting(g, "v4", "v1").ideal_kind == "K"
    isolated = AmpGraph.from_edges(("a", "b", "s"), [("a", "b")])
    sd = build_splitting(isolated, "s", None)
    assert sd.ideal_kind == "C"
    assert build_splitting(isolated, "b", "a").ideal_kind == "K"


def test_iota_class_labels():
    sd = build_splitting(example_graph(), "v4", "v1")
    assert sd.iota_class == "[iota_v4]"


def test_kk_chain_example():
    g = example_graph()
    chain = kk_chain(g)
    assert len(chain.steps) == len(g.vertices) - 1
    assert len(chain.terminal.vertices) == 1
    assert chain.graph == g
    for sd in chain.steps:
        assert verify_split_exact(sd).ok


def test_chain_formal_summands():
    chain = multi_sink_splitting(
        example_graph().quotient(("v4", "v5")), ["v2", "v3"]
    )
    assert chain.iota_terms == ("[iota_1]", "[s_1 o iota_2]", "[s_1 o s_2]")
    assert chain.pi_terms == ("[pi_1]", "[q_1] * [pi_2]", "[q_2 o q_1]")


def test_single_vertex_chain_is_empty():
    g = AmpGraph.from_edges(("v",))
    chain = kk_chain(g)
    assert chain.steps == ()
    assert chain.terminal == g
    assert chain.iota_terms == ("[id]",)


def test_kk_chain_rejects_out_of_scope_graphs():
    loop = AmpGraph.from_edges(("a", "b"), [("a", "b"), ("b", "a")])
    with pytest.raises(ValueError, match="acyclic"):
        kk_chain(loop)
    finite = AmpGraph.from_edges(("a", "b"), [("a", "b", 2)])
    with pytest.raises(ValueError, match="amplified"):
        kk_chain(finite)
    with pytest.raises(ValueError, match="at least one vertex"):
        kk_chain(AmpGraph((), ()))


def test_chain_augments_ambient_for_later_steps():
    # removing s2 second with star w forces the family x -> s2 into the
    # ambient graph before s1 is split off
    g = AmpGraph.from_edges(
        ("x", "w", "s1", "s2"), [("x", "w"), ("w", "s1"), ("w", "s2")]
    )
    chain = kk_chain(g, policy=explicit_steps([("s1", None), ("s2", "w"), ("w", "x")]))
    assert chain.augmented == (("x", "s2"),)
    assert chain.ambient.multiplicity("x", "s2") is OMEGA
    assert [sd.sink for sd in chain.steps] == ["s1", "s2", "w"]
    assert chain.steps[1].augmented == ()


def test_composite_section_splits_composite_quotient():
    g = example_graph()
    for policy in (None, prefer_source_star):
        chain = kk_chain(g) if policy is None else kk_chain(g, policy=policy)
        section = chain.composite_section()
        quot = chain.composite_quotient()
        assert compose(quot, section) == GeneratorMap.identity(chain.terminal)


def test_multi_sink_splitting_with_explicit_stars():
    g = example_graph()
    chain = multi_sink_splitting(g, ["v4", "v5"], ["v2", "v3"])
    assert [sd.sink for sd in chain.steps] == ["v4", "v5"]
    assert [sd.star for sd in chain.steps] == ["v2", "v3"]
    with pytest.raises(ValueError, match="equal length"):
        multi_sink_splitting(g, ["v4"], ["v2", "v3"])
    with pytest.raises(ValueError, match="not a sink"):
        multi_sink_splitting(g, ["v1"], ["v2"])


def test_explicit_steps_policy_validation():
    g = example_graph()
    with pytest.raises(ValueError, match="ran out"):
        kk_chain(g, policy=explicit_steps([("v4", "v1")]))


@pytest.mark.parametrize("seed", range(10))
def test_random_chains_verify(seed):
    rng = random.Random(5000 + seed)
    g = random_amplified_dag(rng, rng.randint(2, 6))
    chain = kk_chain(g)
    assert len(chain.steps) == len(g.vertices) - 1
    for sd in chain.steps:
        assert verify_split_exact(sd).ok
    section = chain.composite_section()
    quot = chain.composite_quotient()
    assert compose(quot, section) == GeneratorMap.identity(chain.terminal)
