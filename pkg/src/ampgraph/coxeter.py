"""Type-A Weyl combinatorics and graphs of quantum flag manifolds.

The Weyl group of the rank-n series-A diagram is the symmetric group on
n + 1 letters, generated by the adjacent transpositions ``s_1 .. s_n``.
Elements are stored in one-line notation as tuples ``w = (w(1), .., w(n+1))``
and words multiply left to right, the rightmost letter acting first:

>>> word_to_perm((1, 2, 1), 2)
(3, 2, 1)
>>> word_to_perm((2, 1, 2), 2) == word_to_perm((1, 2, 1), 2)
True

Tagging a nonempty subset of diagram nodes singles out the parabolic
subgroup generated by the *untagged* nodes.  The vertices of the flag graph
are the minimal-length coset representatives, i.e. the elements with no
untagged right descent; a representative of length k plays the role of a
2k-cell.  Edges connect representatives one letter apart in the subword
(Bruhat) order, so the graph is graded by word length.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .graphs import AmpGraph

#: Ranks above this make the Weyl group unreasonably large to enumerate.
MAX_RANK = 8

Perm = tuple[int, ...]


@dataclass(frozen=True)
class DynkinSpec:
    """A series-A diagram of the given rank with a nonempty tagged node set."""

    rank: int
    tagged: frozenset[int]
    series: str = "A"

    def __post_init__(self) -> None:
        object.__setattr__(self, "tagged", frozenset(self.tagged))
        if self.series != "A":
            raise ValueError(f"only series 'A' diagrams are supported, got {self.series!r}")
        if not 1 <= self.rank <= MAX_RANK:
            raise ValueError(f"rank must be between 1 and {MAX_RANK}, got {self.rank}")
        if not self.tagged:
            raise ValueError("at least one node must be tagged")
        if not self.tagged <= set(range(1, self.rank + 1)):
            raise ValueError(
                f"tagged nodes {sorted(self.tagged)} outside 1..{self.rank}"
            )

    @property
    def untagged(self) -> frozenset[int]:
        return frozenset(range(1, self.rank + 1)) - self.tagged


# -- permutation primitives ---------------------------------------------------


def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 2))


def right_mult(p: Perm, i: int) -> Perm:
    """``p * s_i``: swap the entries in positions i, i+1 (1-based).

    >>> right_mult((1, 2, 3), 1)
    (2, 1, 3)
    """
    q = list(p)
    q[i - 1], q[i] = q[i], q[i - 1]
    return tuple(q)


def left_mult(i: int, p: Perm) -> Perm:
    """``s_i * p``: swap the values i, i+1 wherever they sit."""
    swap = {i: i + 1, i + 1: i}
    return tuple(swap.get(x, x) for x in p)


def inversions(p: Perm) -> int:
    """Coxeter length of ``p``: the number of inversions of its one-line form.

    >>> inversions((3, 2, 1))
    3
    """
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def right_descents(p: Perm) -> frozenset[int]:
    """Generators ``s_i`` with ``len(p * s_i) < len(p)``: descents of one-line form."""
    return frozenset(i for i in range(1, len(p)) if p[i - 1] > p[i])


def left_descents(p: Perm) -> frozenset[int]:
    pos = {x: k for k, x in enumerate(p)}
    return frozenset(i for i in range(1, len(p)) if pos[i] > pos[i + 1])


def word_to_perm(word: Iterable[int], rank: int) -> Perm:
    """Evaluate a word in the generators; the rightmost letter acts first."""
    p = identity_perm(rank)
    for i in word:
        if not 1 <= i <= rank:
            raise ValueError(f"letter {i} outside 1..{rank}")
        p = right_mult(p, i)
    return p


def canonical_reduced_word(p: Perm) -> tuple[int, ...]:
    """The lexicographically smallest reduced word for ``p``.

    Peels the smallest left descent at each step:

    >>> canonical_reduced_word((3, 2, 1))
    (1, 2, 1)
    >>> canonical_reduced_word((1, 2, 3))
    ()
    """
    word: list[int] = []
    while True:
        desc = left_descents(p)
        if not desc:
            return tuple(word)
        i = min(desc)
        word.append(i)
        p = left_mult(i, p)


def weyl_group(rank: int, max_rank: int = MAX_RANK) -> list[tuple[Perm, int]]:
    """All elements of the rank-``rank`` Weyl group with their lengths.

    Breadth-first from the identity, so the length is both the BFS depth and
    the inversion count.  Sorted by (length, one-line form).
    """
    if not 1 <= rank <= max_rank:
        raise ValueError(f"rank must be between 1 and {max_rank}, got {rank}")
    e = identity_perm(rank)
    seen: dict[Perm, int] = {e: 0}
    frontier = [e]
    depth = 0
    while frontier:
        depth += 1
        step: list[Perm] = []
        for p in frontier:
            for i in range(1, rank + 1):
                q = right_mult(p, i)
                if q not in seen:
                    seen[q] = depth
                    step.append(q)
        frontier = step
    return sorted(seen.items(), key=lambda kv: (kv[1], kv[0]))


# -- coset representatives ----------------------------------------------------


@dataclass(frozen=True)
class CosetRep:
    """A minimal-length coset representative with its canonical word."""

    element: Perm
    length: int
    word: tuple[int, ...]


def coset_minimize(p: Perm, untagged: frozenset[int]) -> Perm:
    """Strip untagged right descents until none remain.

    Each strip multiplies on the right by a parabolic generator, so the
    result is the unique minimal-length element of ``p W_S``.
    """
    while True:
        desc = sorted(right_descents(p) & untagged)
        if not desc:
            return p
        p = right_mult(p, desc[0])


def minimal_coset_reps(spec: DynkinSpec) -> list[CosetRep]:
    """Minimal-length representatives of the parabolic cosets, by descents.

    An element represents its coset minimally exactly when every untagged
    generator lengthens it on the right; no coset enumeration is needed.
    Sorted by length then lexicographic canonical word.
    """
    untagged = spec.untagged
    reps = []
    for p, length in weyl_group(spec.rank):
        if all(
            inversions(right_mult(p, i)) > length for i in sorted(untagged)
        ):
            reps.append(CosetRep(p, length, canonical_reduced_word(p)))
    return sorted(reps, key=lambda r: (r.length, r.word))


def flag_vertices_alt(spec: DynkinSpec) -> list[Perm]:
    """Flag vertices characterised through reduced-word endings.

    The identity together with the elements all of whose reduced words end
    (rightmost letter, the one acting first) in a tagged node; equivalently
    the right-descent set, read off the one-line form, is contained in the
    tagged set.
    """
    out = []
    for p, _ in weyl_group(spec.rank):
        if right_descents(p) <= spec.tagged:
            out.append(p)
    return sorted(out, key=lambda p: (inversions(p), canonical_reduced_word(p)))


def bruhat_leq(u: Perm, w: Perm) -> bool:
    """Subword (Bruhat) order via the prefix-dominance criterion.

    ``u <= w`` iff for every i the increasing sort of the first i entries of
    ``u`` is entrywise at most that of ``w``.
    """
    if len(u) != len(w):
        raise ValueError("cannot compare permutations of different sizes")
    n = len(u)
    for i in range(1, n):
        for a, b in zip(sorted(u[:i]), sorted(w[:i])):
            if a > b:
                return False
    return True


def word_label(word: tuple[int, ...]) -> str:
    """Vertex label of a reduced word; the identity is ``e``.

    >>> word_label((2, 1, 3, 2))
    's2s1s3s2'
    """
    return "".join(f"s{i}" for i in word) or "e"


def flag_graph(spec: DynkinSpec) -> AmpGraph:
    """The amplified graph of the flag manifold cut out by ``spec``.

    Vertices are the minimal coset representatives labelled by canonical
    words; a family points from a representative to each one-letter-longer
    representative covering it in the subword order.  Covers are found by
    single-letter deletion from the canonical word of the longer element
    followed by coset minimisation, which the strong exchange property makes
    exhaustive.  The vertex set is cross-checked against the reduced-word
    characterisation before the graph is assembled.
    """
    reps = minimal_coset_reps(spec)
    alt = flag_vertices_alt(spec)
    if [r.element for r in reps] != alt:
        raise RuntimeError(
            "flag vertex characterisations disagree; this is a bug"
        )
    by_element = {r.element: r for r in reps}
    labels = {r.element: word_label(r.word) for r in reps}
    untagged = spec.untagged
    edges = []
    for r in reps:
        targets = set()
        for cut in range(len(r.word)):
            sub = r.word[:cut] + r.word[cut + 1 :]
            p = coset_minimize(word_to_perm(sub, spec.rank), untagged)
            if inversions(p) == r.length - 1:
                lower = by_element.get(p)
                if lower is not None:
                    targets.add(lower.element)
        for p in targets:
            edges.append((labels[p], labels[r.element]))
    vertices = [labels[r.element] for r in reps]
    order = {v: k for k, v in enumerate(vertices)}
    edges.sort(key=lambda e: (order[e[0]], order[e[1]]))
    return AmpGraph.from_edges(vertices, edges)
