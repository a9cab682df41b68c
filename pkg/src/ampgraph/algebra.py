"""Exact normal-form arithmetic in the *-algebra of an amplified graph.

The dense *-subalgebra of a graph algebra is spanned by words
``s_alpha s_beta*`` over paths ``alpha``, ``beta`` sharing a range vertex;
vertex projections are the words with two empty paths.  The product of two
such words is again zero or a single word, so integer combinations form a
ring we can compute in exactly:

* ``(s_a s_b*)(s_c s_d*) = s_{a c''} s_d*``  when ``c = b . c''``,
* ``(s_a s_b*)(s_c s_d*) = s_a s_{d b''}*``  when ``b = c . b''``,
* zero otherwise.

Empty paths carry their base vertex, so the same two clauses silently
implement projection insertion: ``p_v . s_c = s_c`` exactly when ``v`` is the
source of ``c``, and ``s_e s_f*`` collapses to zero whenever the ranges of
``e`` and ``f`` differ, because such a word cannot be formed at all.

*-homomorphisms between graph algebras are modelled by their images on
generators.  Images of an edge family are *uniform in the parallel-edge
index*: a family template maps the i-th edge of one family to a sum of i-th
edges of target families, for the same symbolic i.  Verifying the
Cuntz-Krieger relations for such a map therefore only needs two concrete
indices, one shared and one distinct pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from .graphs import OMEGA, AmpGraph


class EdgeRef(NamedTuple):
    """One concrete edge: the ``index``-th arrow of the family ``src -> dst``."""

    src: str
    dst: str
    index: int


@dataclass(frozen=True, slots=True)
class Path:
    """A finite directed path; ``base`` is its source even when empty."""

    base: str
    edges: tuple[EdgeRef, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(self.edges))
        at = self.base
        for e in self.edges:
            if e.src != at:
                raise ValueError(f"path breaks at {e!r}: expected source {at!r}")
            at = e.dst

    @property
    def source(self) -> str:
        return self.base

    @property
    def range(self) -> str:
        return self.edges[-1].dst if self.edges else self.base

    def __len__(self) -> int:
        return len(self.edges)

    def concat(self, other: "Path") -> "Path":
        if self.range != other.base:
            raise ValueError(
                f"cannot compose path ending at {self.range!r} with one "
                f"starting at {other.base!r}"
            )
        return Path(self.base, self.edges + other.edges)


def _strip_prefix(p: Path, q: Path) -> Path | None:
    """The remainder of ``q`` after its prefix ``p``, or None if not a prefix."""
    if p.base != q.base:
        return None
    k = len(p.edges)
    if k > len(q.edges) or q.edges[:k] != p.edges:
        return None
    return Path(p.range, q.edges[k:])


@dataclass(frozen=True, slots=True)
class CKWord:
    """A normal-form word ``s_alpha s_beta*`` with matching range vertices."""

    alpha: Path
    beta: Path

    def __post_init__(self) -> None:
        if self.alpha.range != self.beta.range:
            raise ValueError(
                f"word ranges differ: {self.alpha.range!r} vs {self.beta.range!r}"
            )

    @property
    def is_vertex(self) -> bool:
        return not self.alpha.edges and not self.beta.edges

    @property
    def degree(self) -> int:
        """Gauge degree |alpha| - |beta|."""
        return len(self.alpha.edges) - len(self.beta.edges)

    def adjoint(self) -> "CKWord":
        return CKWord(self.beta, self.alpha)

    def render(self) -> str:
        if self.is_vertex:
            return f"p[{self.alpha.base}]"
        out = [f"s[{e.src}>{e.dst}#{e.index}]" for e in self.alpha.edges]
        out += [f"s[{e.src}>{e.dst}#{e.index}]*" for e in reversed(self.beta.edges)]
        return " ".join(out)


def projection_word(v: str) -> CKWord:
    p = Path(v)
    return CKWord(p, p)


def word_mul(x: CKWord, y: CKWord) -> CKWord | None:
    """Multiply two normal-form words; ``None`` encodes the zero product."""
    rem = _strip_prefix(x.beta, y.alpha)
    if rem is not None:
        return CKWord(x.alpha.concat(rem), y.beta)
    rem = _strip_prefix(y.alpha, x.beta)
    if rem is not None:
        return CKWord(x.alpha, y.beta.concat(rem))
    return None


def _path_key(p: Path) -> tuple:
    return (p.base, p.edges)


def _word_key(w: CKWord) -> tuple:
    return (_path_key(w.alpha), _path_key(w.beta))


@dataclass(frozen=True)
class CKElement:
    """An integer combination of normal-form words over a fixed graph.

    Terms are stored sorted with zero coefficients dropped, so structural
    equality is exactly equality in the *-algebra.
    """

    graph: AmpGraph
    terms: tuple[tuple[CKWord, int], ...]

    # -- construction ------------------------------------------------------

    @classmethod
    def _make(cls, graph: AmpGraph, acc: dict[CKWord, int]) -> "CKElement":
        items = tuple(
            sorted(
                ((w, c) for w, c in acc.items() if c != 0),
                key=lambda wc: _word_key(wc[0]),
            )
        )
        return cls(graph, items)

    @classmethod
    def zero(cls, graph: AmpGraph) -> "CKElement":
        return cls(graph, ())

    @classmethod
    def projection(cls, graph: AmpGraph, v: str) -> "CKElement":
        graph.index(v)
        return cls(graph, ((projection_word(v), 1),))

    @classmethod
    def edge(cls, graph: AmpGraph, src: str, dst: str, index: int = 0) -> "CKElement":
        """The generator ``s^index_{src,dst}`` as an element."""
        e = EdgeRef(src, dst, index)
        _check_edge(graph, e)
        w = CKWord(Path(src, (e,)), Path(dst))
        return cls(graph, ((w, 1),))

    @classmethod
    def unit(cls, graph: AmpGraph) -> "CKElement":
        return cls._make(graph, {projection_word(v): 1 for v in graph.vertices})

    @classmethod
    def word(cls, graph: AmpGraph, w: CKWord, coeff: int = 1) -> "CKElement":
        for e in w.alpha.edges + w.beta.edges:
            _check_edge(graph, e)
        return cls._make(graph, {w: coeff})

    @classmethod
    def from_terms(
        cls, graph: AmpGraph, items: Iterable[tuple[CKWord, int]]
    ) -> "CKElement":
        acc: dict[CKWord, int] = {}
        for w, c in items:
            for e in w.alpha.edges + w.beta.edges:
                _check_edge(graph, e)
            acc[w] = acc.get(w, 0) + c
        return cls._make(graph, acc)

    # -- ring structure ----------------------------------------------------

    def _check_peer(self, other: "CKElement") -> None:
        if self.graph != other.graph:
            raise ValueError("elements live over different ambient graphs")

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "CKElement") -> "CKElement":
        self._check_peer(other)
        acc = dict(self.terms)
        for w, c in other.terms:
            acc[w] = acc.get(w, 0) + c
        return CKElement._make(self.graph, acc)

    def __neg__(self) -> "CKElement":
        return CKElement(self.graph, tuple((w, -c) for w, c in self.terms))

    def __sub__(self, other: "CKElement") -> "CKElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return CKElement.zero(self.graph)
            return CKElement(
                self.graph, tuple((w, c * other) for w, c in self.terms)
            )
        self._check_peer(other)
        acc: dict[CKWord, int] = {}
        for wx, cx in self.terms:
            for wy, cy in other.terms:
                wz = word_mul(wx, wy)
                if wz is not None:
                    acc[wz] = acc.get(wz, 0) + cx * cy
        return CKElement._make(self.graph, acc)

    def __rmul__(self, scalar: int) -> "CKElement":
        if not isinstance(scalar, int):
            return NotImplemented
        return self * scalar

    def adjoint(self) -> "CKElement":
        acc = {w.adjoint(): c for w, c in self.terms}
        return CKElement._make(self.graph, acc)

    # -- predicates ---------------------------------------------------------

    def is_projection(self) -> bool:
        """Idempotent and self-adjoint; the zero element counts."""
        return self.adjoint() == self and self * self == self

    def gauge_degree(self) -> int | None:
        """Common gauge degree of all terms, or None for a mixed element."""
        if self.is_zero:
            raise ValueError("gauge degree of the zero element is undefined")
        degrees = {w.degree for w, _ in self.terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def render(self) -> str:
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for w, c in self.terms:
            body = w.render()
            if c == 1:
                text = body
            elif c == -1:
                text = f"-{body}"
            else:
                text = f"{c}*{body}"
            parts.append(text)
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.render()


def _check_edge(graph: AmpGraph, e: EdgeRef) -> None:
    if e.index < 0:
        raise ValueError(f"negative edge index in {e!r}")
    if graph.multiplicity(e.src, e.dst) is not OMEGA:
        raise ValueError(
            f"family {e.src!r} -> {e.dst!r} is not an OMEGA family of the graph"
        )


def is_subprojection(sub: CKElement, sup: CKElement) -> bool:
    """Whether ``sub <= sup`` as projections, i.e. ``sup * sub == sub``."""
    if not sub.is_projection():
        raise ValueError(f"not a projection: {sub}")
    if not sup.is_projection():
        raise ValueError(f"not a projection: {sup}")
    return sup * sub == sub


# ---------------------------------------------------------------------------
# generator maps


#: A family template: formal sum of target family symbols, all carrying the
#: same symbolic parallel-edge index as the input edge.
EdgeTemplate = tuple[tuple[int, tuple[str, str]], ...]


def _normalize_template(entries: Iterable[tuple[int, tuple[str, str]]]) -> EdgeTemplate:
    acc: dict[tuple[str, str], int] = {}
    for coeff, fam in entries:
        fam = (fam[0], fam[1])
        acc[fam] = acc.get(fam, 0) + coeff
    return tuple(
        (c, fam) for fam, c in sorted(acc.items()) if c != 0
    )


@dataclass(frozen=True)
class GeneratorMap:
    """A candidate *-homomorphism given by generator images.

    ``vertex_images`` sends each source vertex projection to an element of
    the target algebra; ``edge_images`` sends each source edge family to a
    template, instantiated index-uniformly.  Nothing here promises the data
    is an actual homomorphism; :func:`verify_ck_family` checks that.
    """

    source: AmpGraph
    target: AmpGraph
    vertex_images: dict
    edge_images: dict

    def __post_init__(self) -> None:
        if not self.source.is_amplified or not self.target.is_amplified:
            raise ValueError("generator maps require amplified graphs")
        vimgs = dict(self.vertex_images)
        if set(vimgs) != set(self.source.vertices):
            raise ValueError("vertex images must cover exactly the source vertices")
        for v, img in vimgs.items():
            if img.graph != self.target:
                raise ValueError(f"image of p[{v}] lives over the wrong graph")
        eimgs = {
            fam: _normalize_template(tpl)
            for fam, tpl in dict(self.edge_images).items()
        }
        fams = {(src, dst) for src, dst, _ in self.source.families()}
        if set(eimgs) != fams:
            raise ValueError("edge templates must cover exactly the source families")
        for fam, tpl in eimgs.items():
            for _, (src, dst) in tpl:
                if self.target.multiplicity(src, dst) is not OMEGA:
                    raise ValueError(
                        f"template for {fam} uses missing target family "
                        f"{src!r} -> {dst!r}"
                    )
        object.__setattr__(self, "vertex_images", vimgs)
        object.__setattr__(self, "edge_images", eimgs)

    # -- canned maps ---------------------------------------------------------

    @classmethod
    def identity(cls, graph: AmpGraph) -> "GeneratorMap":
        return cls(
            graph,
            graph,
            {v: CKElement.projection(graph, v) for v in graph.vertices},
            {
                (src, dst): ((1, (src, dst)),)
                for src, dst, _ in graph.families()
            },
        )

    @classmethod
    def inclusion(cls, sub: AmpGraph, graph: AmpGraph) -> "GeneratorMap":
        """The natural embedding of a subgraph algebra, generator by generator."""
        for v in sub.vertices:
            graph.index(v)
        return cls(
            sub,
            graph,
            {v: CKElement.projection(graph, v) for v in sub.vertices},
            {
                (src, dst): ((1, (src, dst)),)
                for src, dst, _ in sub.families()
            },
        )

    @classmethod
    def quotient(cls, graph: AmpGraph, removed: Iterable[str]) -> "GeneratorMap":
        """The quotient map killing every generator that touches ``removed``."""
        removed = tuple(removed)
        target = graph.quotient(removed)
        drop = set(removed)
        vimgs = {
            v: (
                CKElement.zero(target)
                if v in drop
                else CKElement.projection(target, v)
            )
            for v in graph.vertices
        }
        eimgs: dict[tuple[str, str], EdgeTemplate] = {}
        for src, dst, _ in graph.families():
            if src in drop or dst in drop:
                eimgs[(src, dst)] = ()
            else:
                eimgs[(src, dst)] = ((1, (src, dst)),)
        return cls(graph, target, vimgs, eimgs)

    # -- evaluation ------------------------------------------------------------

    def vertex_image(self, v: str) -> CKElement:
        self.source.index(v)
        return self.vertex_images[v]

    def family_template(self, src: str, dst: str) -> EdgeTemplate:
        try:
            return self.edge_images[(src, dst)]
        except KeyError:
            raise ValueError(f"no source family {src!r} -> {dst!r}") from None

    def edge_image(self, e: EdgeRef) -> CKElement:
        """Instantiate the family template of ``e`` at its concrete index."""
        tpl = self.family_template(e.src, e.dst)
        if e.index < 0:
            raise ValueError(f"negative edge index in {e!r}")
        # Templates were validated at construction; skip re-validation here.
        acc: dict[CKWord, int] = {}
        for coeff, (src, dst) in tpl:
            w = CKWord(Path(src, (EdgeRef(src, dst, e.index),)), Path(dst))
            acc[w] = coeff
        return CKElement._make(self.target, acc)

    def _path_image(self, p: Path) -> CKElement:
        if not p.edges:
            return self.vertex_images[p.base]
        out = self.edge_image(p.edges[0])
        for e in p.edges[1:]:
            out = out * self.edge_image(e)
        return out

    def apply(self, x: CKElement) -> CKElement:
        """Push an element through the map, multiplying out letter images."""
        if x.graph != self.source:
            raise ValueError("element does not live over the map's source graph")
        out = CKElement.zero(self.target)
        for w, c in x.terms:
            img = self._path_image(w.alpha) * self._path_image(w.beta).adjoint()
            out = out + img * c
        return out

    def render_table(self) -> dict[str, str]:
        """Generator-by-generator rendering, symbolic in the family index."""
        rows: dict[str, str] = {}
        for v in self.source.vertices:
            rows[f"p[{v}]"] = self.vertex_images[v].render()
        for src, dst, _ in self.source.families():
            tpl = self.edge_images[(src, dst)]
            if not tpl:
                rows[f"s[{src}>{dst}#i]"] = "0"
                continue
            parts = []
            for coeff, (a, b) in tpl:
                body = f"s[{a}>{b}#i]"
                parts.append(body if coeff == 1 else f"{coeff}*{body}")
            rows[f"s[{src}>{dst}#i]"] = " + ".join(parts)
        return rows


def compose(outer: GeneratorMap, inner: GeneratorMap) -> GeneratorMap:
    """The composite ``outer . inner`` as a single generator map."""
    if inner.target != outer.source:
        raise ValueError("maps do not compose: inner target differs from outer source")
    vimgs = {v: outer.apply(img) for v, img in inner.vertex_images.items()}
    eimgs: dict[tuple[str, str], EdgeTemplate] = {}
    for fam, tpl in inner.edge_images.items():
        entries: list[tuple[int, tuple[str, str]]] = []
        for coeff, mid in tpl:
            for c2, out_fam in outer.edge_images[mid]:
                entries.append((coeff * c2, out_fam))
        eimgs[fam] = _normalize_template(entries)
    return GeneratorMap(inner.source, outer.target, vimgs, eimgs)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Check:
    """One verification item; optional items never veto the report."""

    name: str
    passed: bool
    detail: str = ""
    required: bool = True


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if c.required)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def extended(self, more: Iterable[Check]) -> "VerificationReport":
        return VerificationReport(self.checks + tuple(more))

    def render(self) -> str:
        lines = []
        for c in self.checks:
            flag = "PASS" if c.passed else ("warn" if not c.required else "FAIL")
            lines.append(f"{flag:4} {c.name}" + (f": {c.detail}" if c.detail else ""))
        return "\n".join(lines)


def _family_images(m: GeneratorMap, index: int) -> dict[tuple[str, str], CKElement]:
    return {
        (src, dst): m.edge_image(EdgeRef(src, dst, index))
        for src, dst, _ in m.source.families()
    }


def verify_ck_family(m: GeneratorMap, require_unital: bool = True) -> VerificationReport:
    """Check that generator images satisfy the Cuntz-Krieger relations.

    Because family templates are index-uniform, two symbolic index cases
    suffice: a shared index and a pair of distinct indices.  The checks are

    * vertex images are projections and mutually orthogonal,
    * family images are partial isometries compatible with the adjoint,
    * ``m(s)* m(s') = delta . m(p_range)``  (CK1, including distinct-index
      and distinct-family orthogonality),
    * ``m(s) m(s)* <= m(p_source)``  (CK2),
    * the map is unital (optional; embeddings legitimately fail it),
    * every image is gauge homogeneous of the degree of its generator.
    """
    checks: list[Check] = []
    verts = m.source.vertices
    vimg = {v: m.vertex_images[v] for v in verts}

    bad = [v for v in verts if not vimg[v].is_projection()]
    checks.append(
        Check(
            "vertex-projections",
            not bad,
            "" if not bad else f"image of p[{bad[0]}] is not a projection",
        )
    )

    bad_pair = None
    for i, v in enumerate(verts):
        for w in verts[i + 1 :]:
            if not (vimg[v] * vimg[w]).is_zero:
                bad_pair = (v, w)
                break
        if bad_pair:
            break
    checks.append(
        Check(
            "vertex-orthogonality",
            bad_pair is None,
            "" if bad_pair is None else
            f"images of p[{bad_pair[0]}] and p[{bad_pair[1]}] are not orthogonal",
        )
    )

    img0 = _family_images(m, 0)
    img1 = _family_images(m, 1)
    fams = sorted(img0)

    bad_fam = None
    for fam in fams:
        a = img0[fam]
        if a * a.adjoint() * a != a:
            bad_fam = fam
            break
    checks.append(
        Check(
            "adjoint-compatibility",
            bad_fam is None,
            "" if bad_fam is None else
            f"image of s[{bad_fam[0]}>{bad_fam[1]}#i] is not a partial isometry",
        )
    )

    ck1_fail = None
    zero = CKElement.zero(m.target)
    for f1 in fams:
        for f2 in fams:
            for x, y, same in ((img0[f1], img0[f2], True), (img0[f1], img1[f2], False)):
                want = vimg[f1[1]] if same and f1 == f2 else zero
                got = x.adjoint() * y
                if got != want:
                    ck1_fail = (f1, f2, same)
                    break
            if ck1_fail:
                break
        if ck1_fail:
            break
    checks.append(
        Check(
            "ck1",
            ck1_fail is None,
            "" if ck1_fail is None else
            f"m(s)* m(s') defect for families {ck1_fail[0]} , {ck1_fail[1]} "
            f"({'same' if ck1_fail[2] else 'distinct'} index)",
        )
    )

    ck2_fail = None
    for fam in fams:
        a = img0[fam]
        dom = a * a.adjoint()
        if not dom.is_projection() or vimg[fam[0]] * dom != dom:
            ck2_fail = fam
            break
    checks.append(
        Check(
            "ck2",
            ck2_fail is None,
            "" if ck2_fail is None else
            f"m(s) m(s)* not under m(p[{ck2_fail[0]}]) for family {ck2_fail}",
        )
    )

    total = CKElement.zero(m.target)
    for v in verts:
        total = total + vimg[v]
    unital = total == CKElement.unit(m.target)
    checks.append(
        Check(
            "unital",
            unital,
            "" if unital else "vertex images do not sum to the target unit",
            required=require_unital,
        )
    )

    gauge_bad = None
    for v in verts:
        if not vimg[v].is_zero and vimg[v].gauge_degree() != 0:
            gauge_bad = f"p[{v}]"
            break
    if gauge_bad is None:
        for fam in fams:
            a = img0[fam]
            if not a.is_zero and a.gauge_degree() != 1:
                gauge_bad = f"s[{fam[0]}>{fam[1]}#i]"
                break
    checks.append(
        Check(
            "gauge-homogeneity",
            gauge_bad is None,
            "" if gauge_bad is None else f"image of {gauge_bad} is not homogeneous",
        )
    )

    return VerificationReport(tuple(checks))
