"""Independent oracles and random corpora shared by the test modules.

Everything here recomputes expected answers by deliberately naive means:
generic rewriting of generator strings, exhaustive subset or subword search,
gcds of minors, permutations enumerated wholesale.  None of it shares code
with the fast implementations under test, so agreement is meaningful.
"""

from __future__ import annotations

import random
from itertools import combinations, permutations, product
from math import gcd

import numpy as np

from ampgraph import OMEGA, AmpGraph
from ampgraph.algebra import CKWord, EdgeRef, Path, projection_word


def example_graph() -> AmpGraph:
    """Five vertices, four infinite families, sinks v4 and v5."""
    return AmpGraph.from_edges(
        ("v1", "v2", "v3", "v4", "v5"),
        [("v1", "v2"), ("v1", "v3"), ("v2", "v4"), ("v3", "v5")],
    )


# ---------------------------------------------------------------------------
# generator-string rewriting: an independent product of normal-form words
#
# A monomial is a list of symbols ("p", v), ("e", src, dst, idx) for an edge
# generator, ("E", src, dst, idx) for its adjoint.  The defining relations
# are applied wherever they fire until nothing changes; the zero monomial is
# reported as None.


def word_symbols(w: CKWord) -> list[tuple]:
    syms: list[tuple] = [("e", e.src, e.dst, e.index) for e in w.alpha.edges]
    syms += [("E", e.src, e.dst, e.index) for e in reversed(w.beta.edges)]
    return syms or [("p", w.alpha.base)]


def _source(sym: tuple) -> str:
    return sym[1] if sym[0] in ("p", "e") else sym[2]


def _target(sym: tuple) -> str:
    return sym[1] if sym[0] == "p" else sym[2] if sym[0] == "e" else sym[1]


def _reduce_pair(a: tuple, b: tuple):
    """None = no rule, "zero" = kills the monomial, else the replacement."""
    if _target(a) != _source(b):
        return "zero"
    if a[0] == "p":
        return [b] if b[0] != "p" else [a]
    if b[0] == "p":
        return [a]
    if a[0] == "E" and b[0] == "e":
        return [("p", a[2])] if a[1:] == b[1:] else "zero"
    return None


def rewrite(symbols: list[tuple]):
    syms = list(symbols)
    while True:
        for i in range(len(syms) - 1):
            red = _reduce_pair(syms[i], syms[i + 1])
            if red == "zero":
                return None
            if red is not None:
                syms[i : i + 2] = red
                break
        else:
            return syms


def symbols_to_word(syms: list[tuple]) -> CKWord:
    if len(syms) == 1 and syms[0][0] == "p":
        return projection_word(syms[0][1])
    ups = [EdgeRef(s, d, i) for kind, s, d, i in syms if kind == "e"]
    downs = [EdgeRef(s, d, i) for kind, s, d, i in syms if kind == "E"]
    downs.reverse()
    alpha = Path(ups[0].src, tuple(ups)) if ups else None
    beta = Path(downs[0].src, tuple(downs)) if downs else None
    if alpha is None:
        alpha = Path(beta.range)
    if beta is None:
        beta = Path(alpha.range)
    return CKWord(alpha, beta)


def oracle_word_mul(x: CKWord, y: CKWord) -> CKWord | None:
    syms = rewrite(word_symbols(x) + word_symbols(y))
    return None if syms is None else symbols_to_word(syms)


def all_paths(g: AmpGraph, max_len: int, indices=(0, 1)) -> list[Path]:
    """Every path of length at most max_len using the given family indices."""
    out = [Path(v) for v in g.vertices]
    frontier = list(out)
    for _ in range(max_len):
        nxt = []
        for p in frontier:
            for w in g.successors(p.range):
                for i in indices:
                    nxt.append(Path(p.base, p.edges + (EdgeRef(p.range, w, i),)))
        out.extend(nxt)
        frontier = nxt
    return out


def all_words(g: AmpGraph, max_len: int, indices=(0, 1)) -> list[CKWord]:
    paths = all_paths(g, max_len, indices)
    by_range: dict[str, list[Path]] = {}
    for p in paths:
        by_range.setdefault(p.range, []).append(p)
    return [
        CKWord(a, b) for group in by_range.values() for a in group for b in group
    ]


# ---------------------------------------------------------------------------
# exact linear algebra oracles


def det_oracle(a: np.ndarray) -> int:
    """Laplace expansion along the first row; fine for the sizes tested."""
    n = a.shape[0]
    if n == 0:
        return 1
    if n == 1:
        return int(a[0, 0])
    total = 0
    rest = list(range(1, n))
    for j in range(n):
        if a[0, j] == 0:
            continue
        cols = [c for c in range(n) if c != j]
        minor = a[np.ix_(rest, cols)]
        total += (-1) ** j * int(a[0, j]) * det_oracle(minor)
    return total


def invariant_factors_by_minors(a: np.ndarray) -> tuple[int, ...]:
    """Invariant factors as quotients of gcds of k x k minors."""
    m, n = a.shape
    factors = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), k):
            for cols in combinations(range(n), k):
                g = gcd(g, abs(det_oracle(a[np.ix_(rows, cols)])))
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return tuple(factors)


def snf_diag_oracle(a: np.ndarray) -> tuple[int, ...]:
    """Smith diagonal by classical alternating row/column Euclid.

    First-found pivots and one elementary step at a time: no strategy shared
    with the library implementation beyond the definition itself.
    """
    m = [[int(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    diag: list[int] = []
    top = 0
    while top < min(rows, cols):
        if all(m[i][j] == 0 for i in range(top, rows) for j in range(top, cols)):
            break
        while True:
            if m[top][top] == 0:
                i0, j0 = next(
                    (i, j)
                    for i in range(top, rows)
                    for j in range(top, cols)
                    if m[i][j] != 0
                )
                m[top], m[i0] = m[i0], m[top]
                for r in range(rows):
                    m[r][top], m[r][j0] = m[r][j0], m[r][top]
            col_live = [i for i in range(top + 1, rows) if m[i][top] != 0]
            if col_live:
                i = col_live[0]
                if abs(m[i][top]) < abs(m[top][top]):
                    m[top], m[i] = m[i], m[top]
                    continue
                q = m[i][top] // m[top][top]
                m[i] = [x - q * y for x, y in zip(m[i], m[top])]
                continue
            row_live = [j for j in range(top + 1, cols) if m[top][j] != 0]
            if row_live:
                j = row_live[0]
                if abs(m[top][j]) < abs(m[top][top]):
                    for r in range(rows):
                        m[r][top], m[r][j] = m[r][j], m[r][top]
                    continue
                q = m[top][j] // m[top][top]
                for r in range(rows):
                    m[r][j] -= q * m[r][top]
                continue
            bad = next(
                (
                    (i, j)
                    for i in range(top + 1, rows)
                    for j in range(top + 1, cols)
                    if m[i][j] % m[top][top] != 0
                ),
                None,
            )
            if bad is None:
                break
            m[top] = [x + y for x, y in zip(m[top], m[bad[0]])]
        diag.append(abs(m[top][top]))
        top += 1
    return tuple(diag)


def random_int_matrix(rng: random.Random, rows: int, cols: int, bound: int = 9) -> np.ndarray:
    data = [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
    return np.array(data, dtype=object)


# ---------------------------------------------------------------------------
# graph oracles and corpora


def hereditary_subsets_oracle(g: AmpGraph) -> set[tuple[str, ...]]:
    fams = [(a, b) for a, b, _ in g.families()]
    out = set()
    n = len(g.vertices)
    for bits in range(1 << n):
        chosen = {g.vertices[i] for i in range(n) if bits >> i & 1}
        if all(b in chosen for a, b in fams if a in chosen):
            out.add(tuple(v for v in g.vertices if v in chosen))
    return out


def random_amplified_dag(rng: random.Random, n: int, p: float = 0.5) -> AmpGraph:
    """Random acyclic amplified graph on n vertices, random topological order."""
    labels = tuple(f"w{i}" for i in range(1, n + 1))
    order = list(labels)
    rng.shuffle(order)
    rank = {v: i for i, v in enumerate(order)}
    edges = [
        (a, b)
        for a in labels
        for b in labels
        if rank[a] < rank[b] and rng.random() < p
    ]
    return AmpGraph.from_edges(labels, edges)


# ---------------------------------------------------------------------------
# symmetric group oracles (one-line permutations of 1..n+1)


def _compose(u: tuple[int, ...], p: tuple[int, ...]) -> tuple[int, ...]:
    """u after p, one-line: (u . p)(k) = u[p[k]]."""
    return tuple(u[p[k] - 1] for k in range(len(p)))


def _apply_gen(p: tuple[int, ...], i: int) -> tuple[int, ...]:
    q = list(p)
    q[i - 1], q[i] = q[i], q[i - 1]
    return tuple(q)


def _inv_count(p: tuple[int, ...]) -> int:
    return sum(
        1 for a in range(len(p)) for b in range(a + 1, len(p)) if p[a] > p[b]
    )


def subgroup_oracle(rank: int, gens: set[int]) -> set[tuple[int, ...]]:
    ident = tuple(range(1, rank + 2))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for i in gens:
                q = _apply_gen(p, i)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def coset_reps_oracle(rank: int, tagged: frozenset[int]) -> set[tuple[int, ...]]:
    """Minimum-length element of each coset w W_J, J the untagged nodes."""
    untagged = set(range(1, rank + 1)) - set(tagged)
    wj = subgroup_oracle(rank, untagged)
    reps = set()
    seen = set()
    for p in permutations(range(1, rank + 2)):
        if p in seen:
            continue
        coset = {_compose(p, u) for u in wj}
        seen |= coset
        reps.add(min(coset, key=lambda q: (_inv_count(q), q)))
    return reps


def lex_least_reduced_word_oracle(p: tuple[int, ...]) -> tuple[int, ...]:
    """First word in length-then-lex order that evaluates to p."""
    rank = len(p) - 1
    ident = tuple(range(1, rank + 2))
    target_len = _inv_count(p)
    for word in product(range(1, rank + 1), repeat=target_len):
        q = ident
        for i in word:
            q = _apply_gen(q, i)
        if q == p:
            return word
    raise AssertionError(f"no reduced word of length {target_len} found for {p}")


def bruhat_leq_oracle(u: tuple[int, ...], w_word: tuple[int, ...], rank: int) -> bool:
    """Subword property against one fixed reduced word of w."""
    ident = tuple(range(1, rank + 2))
    k = _inv_count(u)
    for picks in combinations(range(len(w_word)), k):
        q = ident
        for idx in picks:
            q = _apply_gen(q, w_word[idx])
        if q == u:
            return True
    return False
