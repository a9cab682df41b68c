"""Explicit unital splittings of sink-removal extensions.

Removing a sink ``v_s`` from an amplified graph presents the algebra as an
extension of the quotient-graph algebra by a compact ideal.  Given a second
vertex ``v_*`` (a *star*) that is either a source or has every in-neighbour
connected to ``v_s`` by a path, the assignment

    p_{v_*}        |->  p_{v_*} + p_{v_s}
    s^i_{v, v_*}   |->  s^i_{v, v_*} + s^i_{v, v_s}
    everything else fixed

is a unital section of the quotient map.  The edge families ``v -> v_s`` it
needs may be missing; they are first added by the path-preserving move
:meth:`~ampgraph.graphs.AmpGraph.amplify_transitive_edges`, which changes the
graph but not the algebra.  With ``star=None`` the plain generator embedding
is used instead: also a section, but not unital.

Iterating sink removals on an acyclic graph peels the algebra down to a sum
of compacts plus a point, one explicitly split extension per step.  Later
steps may force edge additions on earlier graphs (a step's section needs its
target families to exist); :func:`multi_sink_splitting` and :func:`kk_chain`
therefore stabilise one ambient graph by running the augmentation demands to
a fixed point before rebuilding every step, so consecutive sections compose
on the nose.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .algebra import (
    Check,
    CKElement,
    EdgeRef,
    GeneratorMap,
    VerificationReport,
    compose,
    verify_ck_family,
)
from .graphs import AmpGraph


class VerificationFailure(RuntimeError):
    """A symbolic check that should hold by construction did not."""


def valid_stars(g: AmpGraph, sink: str) -> list[str]:
    """All admissible star vertices for splitting off ``sink``.

    A vertex ``v != sink`` qualifies when it is a source, or when every
    vertex with an edge family into it also has a path to ``sink``.
    """
    cls = g.classify()
    if sink not in cls.sinks:
        raise ValueError(f"{sink!r} is not a sink")
    reach = {v: set(g.reachable_set(v)) for v in g.vertices}
    out = []
    for v in g.vertices:
        if v == sink:
            continue
        preds = g.predecessors(v)
        if all(sink in reach[w] for w in preds):
            out.append(v)
    return out


@dataclass(frozen=True)
class SplitData:
    """One split sink-removal extension, with both maps in hand.

    ``sigma`` maps the quotient-graph algebra into the working-graph algebra
    (the original graph plus any families added for the splitting), and
    ``quotient_map`` goes the other way; ``quotient_map . sigma = id``.
    """

    original: AmpGraph
    working: AmpGraph
    sink: str
    star: str | None
    sigma: GeneratorMap
    quotient_map: GeneratorMap
    augmented: tuple[tuple[str, str], ...]

    @property
    def quotient_graph(self) -> AmpGraph:
        return self.sigma.source

    @property
    def ideal_kind(self) -> str:
        """``"K"`` for the compacts, ``"C"`` when the sink is also a source."""
        return "C" if self.sink in self.working.classify().sources else "K"

    @property
    def iota_class(self) -> str:
        return f"[iota_{self.sink}]"


def _splitting_map(working: AmpGraph, sink: str, star: str | None) -> GeneratorMap:
    source = working.quotient((sink,))
    if star is None:
        return GeneratorMap.inclusion(source, working)
    vimgs = {}
    for v in source.vertices:
        img = CKElement.projection(working, v)
        if v == star:
            img = img + CKElement.projection(working, sink)
        vimgs[v] = img
    eimgs = {}
    for src, dst, _ in source.families():
        if dst == star:
            eimgs[(src, dst)] = ((1, (src, dst)), (1, (src, sink)))
        else:
            eimgs[(src, dst)] = ((1, (src, dst)),)
    return GeneratorMap(source, working, vimgs, eimgs)


def _section_checks(sd: SplitData) -> list[Check]:
    """``quotient_map . sigma`` must fix every generator of the quotient graph."""
    src = sd.sigma.source
    q, s = sd.quotient_map, sd.sigma
    for v in src.vertices:
        p = CKElement.projection(src, v)
        if q.apply(s.apply(p)) != p:
            return [Check("section-identity", False, f"q(sigma(p[{v}])) != p[{v}]")]
    for a, b, _ in src.families():
        for idx in (0, 1):
            x = CKElement.edge(src, a, b, idx)
            if q.apply(s.apply(x)) != x:
                return [
                    Check(
                        "section-identity",
                        False,
                        f"q(sigma(s[{a}>{b}#{idx}])) != s[{a}>{b}#{idx}]",
                    )
                ]
    return [Check("section-identity", True)]


def build_splitting(
    g: AmpGraph, sink: str, star: str | None, *, verify: bool = True
) -> SplitData:
    """Construct the splitting of the extension that removes ``sink``.

    With a star vertex the section is unital and the working graph gains the
    edge families the section formula needs; with ``star=None`` the working
    graph is ``g`` itself and the section is the non-unital embedding.
    Construction-time verification failures signal an implementation bug and
    raise :class:`VerificationFailure`.
    """
    cls = g.classify()
    if not cls.amplified:
        raise ValueError("splitting requires an amplified graph")
    if sink not in cls.sinks:
        raise ValueError(f"{sink!r} is not a sink")
    working = g
    augmented: list[tuple[str, str]] = []
    if star is not None:
        stars = valid_stars(g, sink)
        if star not in stars:
            raise ValueError(
                f"{star!r} is not a valid choice of star for sink {sink!r}; "
                f"valid stars: {stars}"
            )
        for v in g.vertices:
            if g.multiplicity(v, star) != 0 and g.multiplicity(v, sink) == 0:
                working = working.amplify_transitive_edges(v, sink)
                augmented.append((v, sink))
    sigma = _splitting_map(working, sink, star)
    qmap = GeneratorMap.quotient(working, (sink,))
    sd = SplitData(
        original=g,
        working=working,
        sink=sink,
        star=star,
        sigma=sigma,
        quotient_map=qmap,
        augmented=tuple(augmented),
    )
    if verify:
        report = verify_split_exact(sd)
        if not report.ok:
            raise VerificationFailure(
                "splitting construction failed verification:\n" + report.render()
            )
    return sd


def verify_split_exact(sd: SplitData) -> VerificationReport:
    """Full symbolic checklist for one split extension.

    Runs the Cuntz-Krieger checks on the section (unitality demanded only
    when a star was used), the same for the quotient map, the section
    identity on every generator, and records which ideal was split off.
    """
    report = verify_ck_family(sd.sigma, require_unital=sd.star is not None)
    checks = list(report.checks)
    q_report = verify_ck_family(sd.quotient_map, require_unital=True)
    checks.append(
        Check(
            "quotient-map",
            q_report.ok,
            "" if q_report.ok else q_report.render(),
        )
    )
    checks.extend(_section_checks(sd))
    kind = sd.ideal_kind
    what = "the compacts" if kind == "K" else "C (sink is an isolated vertex)"
    checks.append(Check("ideal", True, f"ideal at {sd.sink} is {what}"))
    return VerificationReport(tuple(checks))


# ---------------------------------------------------------------------------
# chains of sink removals


#: A policy picks ``(sink, star)`` for the current graph; ``sinks`` is the
#: tuple of available sinks in vertex order.
StarPolicy = Callable[[AmpGraph, tuple[str, ...]], tuple[str, str | None]]


def first_sink_first_star(g: AmpGraph, sinks: tuple[str, ...]) -> tuple[str, str | None]:
    """Default policy: first sink in vertex order, first valid star."""
    sink = sinks[0]
    stars = valid_stars(g, sink)
    if not stars:
        raise ValueError(f"no valid star exists for sink {sink!r}")
    return sink, stars[0]


def prefer_source_star(g: AmpGraph, sinks: tuple[str, ...]) -> tuple[str, str | None]:
    """Like the default, but picks a source vertex as the star when one exists."""
    sink = sinks[0]
    stars = valid_stars(g, sink)
    if not stars:
        raise ValueError(f"no valid star exists for sink {sink!r}")
    sources = set(g.classify().sources)
    for v in stars:
        if v in sources:
            return sink, v
    return sink, stars[0]


def explicit_steps(pairs: Sequence[tuple[str, str | None]]) -> StarPolicy:
    """A policy that replays a fixed ``(sink, star)`` list."""
    queue = list(pairs)

    def policy(g: AmpGraph, sinks: tuple[str, ...]) -> tuple[str, str | None]:
        if not queue:
            raise ValueError("ran out of prescribed (sink, star) steps")
        sink, star = queue.pop(0)
        if sink not in sinks:
            raise ValueError(f"{sink!r} is not a sink of the remaining graph")
        return sink, star

    return policy


@dataclass(frozen=True)
class KKChain:
    """A verified chain of split sink removals.

    ``ambient`` is the input graph plus every edge family the chain's
    sections needed; the step quotients descend from it.  The formal class
    summands mirror how the two inverse equivalence classes decompose:
    ``iota_terms[k]`` is the class of the k-th ideal pushed forward through
    earlier sections, ``pi_terms[k]`` the matching compression through
    earlier quotient maps.
    """

    graph: AmpGraph
    ambient: AmpGraph
    steps: tuple[SplitData, ...]
    augmented: tuple[tuple[str, str], ...]

    @property
    def terminal(self) -> AmpGraph:
        return self.steps[-1].quotient_graph if self.steps else self.ambient

    @property
    def sinks(self) -> tuple[str, ...]:
        return tuple(sd.sink for sd in self.steps)

    def composite_section(self) -> GeneratorMap:
        """``sigma_1 . sigma_2 . ... `` from the terminal algebra upward."""
        if not self.steps:
            return GeneratorMap.identity(self.ambient)
        out = self.steps[0].sigma
        for sd in self.steps[1:]:
            out = compose(out, sd.sigma)
        return out

    def composite_quotient(self) -> GeneratorMap:
        """``q_k . ... . q_1`` from the ambient algebra down to the terminal."""
        if not self.steps:
            return GeneratorMap.identity(self.ambient)
        out = self.steps[0].quotient_map
        for sd in self.steps[1:]:
            out = compose(sd.quotient_map, out)
        return out

    @property
    def iota_terms(self) -> tuple[str, ...]:
        names = []
        for k in range(1, len(self.steps) + 1):
            parts = [f"s_{j}" for j in range(1, k)] + [f"iota_{k}"]
            names.append("[" + " o ".join(parts) + "]")
        tail = [f"s_{j}" for j in range(1, len(self.steps) + 1)]
        names.append("[" + " o ".join(tail) + "]" if tail else "[id]")
        return tuple(names)

    @property
    def pi_terms(self) -> tuple[str, ...]:
        names = []
        for k in range(1, len(self.steps) + 1):
            if k == 1:
                names.append("[pi_1]")
            else:
                qs = " o ".join(f"q_{j}" for j in range(k - 1, 0, -1))
                names.append(f"[{qs}] * [pi_{k}]")
        tail = " o ".join(f"q_{j}" for j in range(len(self.steps), 0, -1))
        names.append(f"[{tail}]" if tail else "[id]")
        return tuple(names)


def _plan(g: AmpGraph, policy: StarPolicy, n_steps: int | None) -> list[tuple[str, str | None]]:
    plan: list[tuple[str, str | None]] = []
    current = g
    while True:
        if n_steps is None:
            if len(current.vertices) <= 1:
                break
        elif len(plan) >= n_steps:
            break
        sinks = current.classify().sinks
        if not sinks:
            raise ValueError("graph has no sink: removal chain cannot proceed")
        sink, star = policy(current, sinks)
        plan.append((sink, star))
        current = current.quotient((sink,))
    return plan


def _stabilize(g: AmpGraph, plan: Sequence[tuple[str, str | None]]) -> tuple[AmpGraph, tuple[tuple[str, str], ...]]:
    """Add every family any step's section will need, to a fixed point.

    Each demanded pair rides on a path in a quotient graph, which lifts to
    the ambient graph, so each addition is a legal path-preserving move; the
    underlying check still runs and raises if that ever fails.
    """
    ambient = g
    added: list[tuple[str, str]] = []
    while True:
        wanted: list[tuple[str, str]] = []
        current = ambient
        for sink, star in plan:
            if star is not None:
                for v in current.vertices:
                    if (
                        current.multiplicity(v, star) != 0
                        and current.multiplicity(v, sink) == 0
                    ):
                        pair = (v, sink)
                        if pair not in wanted:
                            wanted.append(pair)
            current = current.quotient((sink,))
        if not wanted:
            return ambient, tuple(added)
        for v, w in wanted:
            ambient = ambient.amplify_transitive_edges(v, w)
            added.append((v, w))


def _run_chain(g: AmpGraph, plan: Sequence[tuple[str, str | None]]) -> KKChain:
    ambient, added = _stabilize(g, plan)
    steps: list[SplitData] = []
    current = ambient
    for sink, star in plan:
        sd = build_splitting(current, sink, star)
        if sd.augmented:
            raise VerificationFailure(
                f"ambient graph not stabilised: step {sink!r} still added {sd.augmented}"
            )
        steps.append(sd)
        current = sd.quotient_graph
    return KKChain(graph=g, ambient=ambient, steps=tuple(steps), augmented=added)


def multi_sink_splitting(
    g: AmpGraph,
    sinks: Sequence[str],
    stars: Sequence[str | None] | None = None,
) -> KKChain:
    """Split off several sinks in order and verify the composed section.

    Each listed vertex must be a sink of the graph remaining at its step.
    ``stars[i]`` may be ``None`` for the embedding section; with ``stars``
    omitted the first valid star is chosen at every step.
    """
    if stars is None:
        plan = []
        current = g
        for sink in sinks:
            avail = current.classify().sinks
            if sink not in avail:
                raise ValueError(f"{sink!r} is not a sink of the remaining graph")
            cand = valid_stars(current, sink)
            if not cand:
                raise ValueError(f"no valid star exists for sink {sink!r}")
            plan.append((sink, cand[0]))
            current = current.quotient((sink,))
    else:
        if len(stars) != len(sinks):
            raise ValueError("sinks and stars must have equal length")
        plan = _plan(g, explicit_steps(list(zip(sinks, stars))), n_steps=len(sinks))
    chain = _run_chain(g, plan)
    if chain.steps:
        section = chain.composite_section()
        unital = all(sd.star is not None for sd in chain.steps)
        report = verify_ck_family(section, require_unital=unital)
        if not report.ok:
            raise VerificationFailure(
                "composite section failed verification:\n" + report.render()
            )
        quot = chain.composite_quotient()
        term = chain.terminal
        for v in term.vertices:
            p = CKElement.projection(term, v)
            if quot.apply(section.apply(p)) != p:
                raise VerificationFailure(f"composite section identity fails at p[{v}]")
        for a, b, _ in term.families():
            x = CKElement.edge(term, a, b, 0)
            if quot.apply(section.apply(x)) != x:
                raise VerificationFailure(
                    f"composite section identity fails at s[{a}>{b}#0]"
                )
    return chain


def kk_chain(g: AmpGraph, policy: StarPolicy = first_sink_first_star) -> KKChain:
    """Peel an acyclic amplified graph down to one vertex, splitting each step.

    The resulting chain witnesses an explicit equivalence between the graph
    algebra and the direct sum of one copy of C per vertex; the formal
    summand lists on the result name the two inverse classes factor by
    factor.  Raises on cyclic input, where a sink can fail to exist.
    """
    cls = g.classify()
    if not cls.amplified:
        raise ValueError("kk_chain requires an amplified graph")
    if not cls.acyclic:
        raise ValueError("kk_chain requires an acyclic graph")
    if not g.vertices:
        raise ValueError("kk_chain requires at least one vertex")
    plan = _plan(g, policy, n_steps=None)
    return _run_chain(g, plan)
