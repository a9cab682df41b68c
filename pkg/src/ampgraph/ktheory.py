"""Exact integer K-theory bookkeeping for amplified graph algebras.

For a finite acyclic amplified graph the even K-group is free on the vertex
projection classes and the odd group vanishes, so every map this package
constructs acts on K_0 through an integer matrix in the vertex bases.  The
module extracts those matrices from generator maps, and provides the exact
integer linear algebra (Smith normal form, kernels, unimodular inverses)
needed to certify that a split extension really decomposes K_0.

Matrices are dense ``numpy`` arrays with ``dtype=object`` holding Python
ints, so arithmetic never overflows; it either stays exact or raises.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import Check, GeneratorMap, VerificationReport, word_mul
from .graphs import AmpGraph
from .splitting import KKChain, SplitData


def intmat(rows) -> np.ndarray:
    """Copy ``rows`` into an exact integer matrix (object dtype)."""
    arr = np.array(rows, dtype=object)
    if arr.ndim != 2:
        raise ValueError("expected a two-dimensional matrix")
    for x in arr.flat:
        if not isinstance(x, int) or isinstance(x, bool):
            raise ValueError(f"non-integer matrix entry {x!r}")
    return arr


def _eye(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


def determinant(a: np.ndarray) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n, m = a.shape
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    work = [[int(x) for x in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if work[k][k] == 0:
            for i in range(k + 1, n):
                if work[i][k] != 0:
                    work[k], work[i] = work[i], work[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (work[i][j] * work[k][k] - work[i][k] * work[k][j]) // prev
            work[i][k] = 0
        prev = work[k][k]
    return sign * work[n - 1][n - 1]


def smith_normal_form(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Decompose ``U @ a @ V = D`` with unimodular U, V and diagonal D.

    The diagonal is nonnegative and each entry divides the next.  Pivoting is
    deterministic: the candidate of smallest nonzero absolute value wins,
    ties broken leftmost then topmost, so equal inputs give equal outputs.
    """
    d = np.array(a, dtype=object)
    if d.ndim != 2:
        raise ValueError("expected a two-dimensional matrix")
    rows, cols = d.shape
    u = _eye(rows)
    v = _eye(cols)
    t = 0
    while t < min(rows, cols):
        pivot = None
        for j in range(t, cols):
            for i in range(t, rows):
                x = d[i, j]
                if x != 0:
                    key = (abs(x), j, i)
                    if pivot is None or key < pivot[0]:
                        pivot = (key, i, j)
        if pivot is None:
            break
        _, pi, pj = pivot
        if pi != t:
            d[[t, pi], :] = d[[pi, t], :]
            u[[t, pi], :] = u[[pi, t], :]
        if pj != t:
            d[:, [t, pj]] = d[:, [pj, t]]
            v[:, [t, pj]] = v[:, [pj, t]]
        if d[t, t] < 0:
            d[t, :] = -d[t, :]
            u[t, :] = -u[t, :]
        dirty = False
        for i in range(t + 1, rows):
            if d[i, t] != 0:
                q = d[i, t] // d[t, t]
                if q:
                    d[i, :] -= q * d[t, :]
                    u[i, :] -= q * u[t, :]
                if d[i, t] != 0:
                    dirty = True
        for j in range(t + 1, cols):
            if d[t, j] != 0:
                q = d[t, j] // d[t, t]
                if q:
                    d[:, j] -= q * d[:, t]
                    v[:, j] -= q * v[:, t]
                if d[t, j] != 0:
                    dirty = True
        if dirty:
            continue
        hold = d[t, t]
        culprit = None
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if d[i, j] % hold != 0:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            d[t, :] += d[culprit, :]
            u[t, :] += u[culprit, :]
            continue
        t += 1
    return u, d, v


def diagonal_of(d: np.ndarray) -> tuple[int, ...]:
    return tuple(int(d[i, i]) for i in range(min(d.shape)))


def kernel_basis(a: np.ndarray) -> np.ndarray:
    """Columns spanning the integer kernel of ``a`` (a saturated sublattice)."""
    u, d, v = smith_normal_form(a)
    rank = sum(1 for x in diagonal_of(d) if x != 0)
    return v[:, rank:]


def unimodular_inverse(m: np.ndarray) -> np.ndarray:
    """Exact inverse of a unimodular integer matrix, via its normal form."""
    rows, cols = m.shape
    if rows != cols:
        raise ValueError("only square matrices can be unimodular")
    u, d, v = smith_normal_form(m)
    if diagonal_of(d) != (1,) * rows:
        raise ValueError("matrix is not unimodular")
    return v @ u


@dataclass(frozen=True)
class KGroups:
    """K-groups of an acyclic amplified graph algebra: free K_0, zero K_1."""

    k0_rank: int
    k0_generators: tuple[str, ...]
    k1_rank: int = 0


def k_groups(g: AmpGraph) -> KGroups:
    cls = g.classify()
    if not cls.amplified:
        raise ValueError("k_groups requires an amplified graph")
    if not cls.acyclic:
        raise ValueError("k_groups requires an acyclic graph")
    return KGroups(k0_rank=len(g.vertices), k0_generators=g.vertices)


def induced_k0(m: GeneratorMap) -> np.ndarray:
    """The matrix of ``m`` on K_0 in the vertex bases (columns = source).

    Requires every vertex image to be zero or a sum of pairwise-orthogonal
    range projections ``s_alpha s_alpha*`` with coefficient one; anything
    else has no evident K_0 class and is refused.
    """
    rows = len(m.target.vertices)
    out = np.zeros((rows, len(m.source.vertices)), dtype=object)
    for col, v in enumerate(m.source.vertices):
        img = m.vertex_images[v]
        words = [w for w, _ in img.terms]
        for w, c in img.terms:
            if c != 1 or w.alpha != w.beta:
                raise ValueError(
                    f"image of p[{v}] is not an orthogonal sum of path "
                    f"projections: term {c}*{w.render()}"
                )
        for i, w1 in enumerate(words):
            for w2 in words[i + 1 :]:
                if word_mul(w1, w2) is not None:
                    raise ValueError(
                        f"image of p[{v}] has non-orthogonal terms "
                        f"{w1.render()} and {w2.render()}"
                    )
        for w, _ in img.terms:
            out[m.target.index(w.alpha.range), col] += 1
    return out


@dataclass(frozen=True)
class K0SplitCheck:
    """K_0 data of one split extension plus the checklist that certifies it."""

    sink: str
    q: np.ndarray
    s: np.ndarray
    inclusion: np.ndarray
    report: VerificationReport


def check_split_exact_k0(sd: SplitData) -> K0SplitCheck:
    """Certify split exactness on K_0 for one sink removal.

    Checks ``Q S = I`` on the quotient summand, ``Q`` kills the ideal class,
    and the kernel of ``Q`` is exactly the copy of Z at the sink, which
    together give the decomposition of K_0 of the working graph as
    ``Z (+) Z^(N-1)``.
    """
    q = induced_k0(sd.quotient_map)
    s = induced_k0(sd.sigma)
    n = len(sd.working.vertices)
    inc = np.zeros((n, 1), dtype=object)
    inc[sd.working.index(sd.sink), 0] = 1
    checks = []
    qs = q @ s
    checks.append(
        Check(
            "k0-section",
            bool((qs == _eye(n - 1)).all()),
            "Q S = identity on the quotient K_0",
        )
    )
    checks.append(
        Check(
            "k0-ideal-killed",
            bool((q @ inc == np.zeros((n - 1, 1), dtype=object)).all()),
            "Q annihilates the ideal class",
        )
    )
    ker = kernel_basis(q)
    ok_rank = ker.shape[1] == 1
    ok_span = ok_rank and (
        (ker[:, 0] == inc[:, 0]).all() or (ker[:, 0] == -inc[:, 0]).all()
    )
    checks.append(
        Check(
            "k0-kernel",
            bool(ok_rank and ok_span),
            "ker Q is the copy of Z at the sink"
            if ok_span
            else f"kernel rank {ker.shape[1]}, expected the sink line",
        )
    )
    checks.append(
        Check(
            "k0-decomposition",
            True,
            f"K_0 = Z^{n} splits as Z (+) Z^{n - 1}",
        )
    )
    return K0SplitCheck(
        sink=sd.sink, q=q, s=s, inclusion=inc, report=VerificationReport(tuple(checks))
    )


@dataclass(frozen=True)
class K0ChainCheck:
    """K_0 of a whole removal chain: mutually inverse square matrices.

    ``backward`` columns push each split-off ideal class (and the terminal
    class) up into the ambient K_0; ``forward`` compresses the other way.
    Their products being identities is the K_0 shadow of the chain being an
    equivalence onto a sum of scalars.
    """

    forward: np.ndarray
    backward: np.ndarray
    report: VerificationReport


def check_chain_k0(chain: KKChain) -> K0ChainCheck:
    n = len(chain.ambient.vertices)
    cols = []
    rows = []
    prefix = _eye(n)
    qprefix = _eye(n)
    checks = []
    for sd in chain.steps:
        working = sd.working
        m = len(working.vertices)
        s = induced_k0(sd.sigma)
        q = induced_k0(sd.quotient_map)
        e_sink = np.zeros((m, 1), dtype=object)
        e_sink[working.index(sd.sink), 0] = 1
        block = np.concatenate([e_sink, s], axis=1)
        try:
            inv = unimodular_inverse(block)
        except ValueError:
            checks.append(
                Check(
                    "k0-step-unimodular",
                    False,
                    f"step at {sd.sink!r}: [e_sink | S] is not unimodular",
                )
            )
            return K0ChainCheck(
                forward=_eye(0), backward=_eye(0),
                report=VerificationReport(tuple(checks)),
            )
        cols.append(prefix @ e_sink)
        rows.append(inv[0:1, :] @ qprefix)
        prefix = prefix @ s
        qprefix = q @ qprefix
    cols.append(prefix)
    rows.append(qprefix)
    backward = np.concatenate(cols, axis=1)
    forward = np.concatenate(rows, axis=0)
    eye = _eye(n)
    checks.append(
        Check("k0-chain-left-inverse", bool((forward @ backward == eye).all()), "")
    )
    checks.append(
        Check("k0-chain-right-inverse", bool((backward @ forward == eye).all()), "")
    )
    groups = k_groups(chain.ambient)
    checks.append(
        Check(
            "k0-rank",
            groups.k0_rank == n and groups.k1_rank == 0,
            f"K_0 = Z^{n}, K_1 = 0",
        )
    )
    return K0ChainCheck(
        forward=forward, backward=backward, report=VerificationReport(tuple(checks))
    )
