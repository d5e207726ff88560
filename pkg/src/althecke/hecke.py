"""Block-diagonal regular representation and algebra-level utilities.

All algebra elements live as block-diagonal complex matrices over the direct
sum of the irreducible blocks; only the diagonal blocks are stored.  The
word basis {L_1^g1 ... L_n^gn T_w} is realised through a deterministic
leftmost-descent bubble sort producing one reduced word per permutation.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .scalars import AlgebraParams
from .seminormal import (
    CoefficientSystem,
    GammaTable,
    gamma_table,
    require_semisimple,
    specht_block,
)
from .tableaux import (
    Multipartition,
    StdTableau,
    content,
    content_seq,
    enum_multipartitions,
    enum_std_tableaux,
    residue_seq,
)


class RankDeficiencyError(RuntimeError):
    """A family that must be linearly independent was not."""


@dataclass(frozen=True)
class AlgElement:
    """A block-diagonal matrix, one square block per irreducible block."""

    blocks: tuple[np.ndarray, ...]

    def __matmul__(self, other: "AlgElement") -> "AlgElement":
        return AlgElement(tuple(a @ b for a, b in zip(self.blocks, other.blocks)))

    def __add__(self, other: "AlgElement") -> "AlgElement":
        return AlgElement(tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        return AlgElement(tuple(a - b for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self) -> "AlgElement":
        return AlgElement(tuple(-a for a in self.blocks))

    def __mul__(self, scalar) -> "AlgElement":
        return AlgElement(tuple(a * scalar for a in self.blocks))

    __rmul__ = __mul__

    def vec(self) -> np.ndarray:
        return np.concatenate([b.ravel() for b in self.blocks])

    def max_abs(self) -> float:
        return max(float(np.max(np.abs(b))) if b.size else 0.0
                   for b in self.blocks)

    def trace(self) -> complex:
        return complex(sum(np.trace(b) for b in self.blocks))


class RegularRep:
    """The assembled direct sum of all irreducible blocks of one algebra."""

    def __init__(self, params: AlgebraParams, cs: CoefficientSystem,
                 gammas: GammaTable | None = None):
        if cs.params is not params and cs.params != params:
            raise ValueError("coefficient system was built for other parameters")
        require_semisimple(params)
        self.params = params
        self.cs = cs
        gamma_obj = gammas if gammas is not None else gamma_table(cs)
        self.gamma_obj = gamma_obj
        self.gammas = gamma_obj.values
        self.shapes = enum_multipartitions(params.n, params.level)
        self.blocks = [specht_block(lam, cs, gamma_obj) for lam in self.shapes]
        self.dims = [b.dim for b in self.blocks]
        self.offsets = list(itertools.accumulate([0] + self.dims))
        self.D = self.offsets[-1]
        self.tableaux = [t for b in self.blocks for t in b.basis]
        self.loc: dict[StdTableau, tuple[int, int]] = {}
        for bidx, b in enumerate(self.blocks):
            for pos, t in enumerate(b.basis):
                self.loc[t] = (bidx, pos)
        self._shape_index = {lam: i for i, lam in enumerate(self.shapes)}
        # integer contents and their quantum brackets per position, globally
        self.content_table = np.array(
            [[content(t, k, params.kappa) for t in self.tableaux]
             for k in range(1, params.n + 1)], dtype=int)
        self.bracket_table = np.array(
            [[params.qint(int(c)) for c in row] for row in self.content_table],
            dtype=params.dtype)
        self.Ls = [AlgElement(tuple(b.lmats[k] for b in self.blocks))
                   for k in range(params.n)]
        self.Ts = [AlgElement(tuple(b.tmats[r] for b in self.blocks))
                   for r in range(params.n - 1)]

    @property
    def dim_algebra(self) -> int:
        return sum(d * d for d in self.dims)

    def block_index(self, shape: Multipartition) -> int:
        return self._shape_index[shape]

    def identity(self) -> AlgElement:
        return AlgElement(tuple(np.eye(d, dtype=self.params.dtype)
                                for d in self.dims))

    def zero(self) -> AlgElement:
        return AlgElement(tuple(np.zeros((d, d), dtype=self.params.dtype)
                                for d in self.dims))

    def from_diag(self, diag: np.ndarray) -> AlgElement:
        out = []
        for bidx, d in enumerate(self.dims):
            lo = self.offsets[bidx]
            out.append(np.diag(diag[lo:lo + d]).astype(self.params.dtype))
        return AlgElement(tuple(out))

    def unvec(self, v: np.ndarray) -> AlgElement:
        out = []
        pos = 0
        for d in self.dims:
            out.append(v[pos:pos + d * d].reshape(d, d))
            pos += d * d
        return AlgElement(tuple(out))

    def matrix_unit(self, s: StdTableau, t: StdTableau) -> AlgElement:
        bs, ps = self.loc[s]
        bt, pt = self.loc[t]
        if bs != bt:
            raise ValueError("matrix units need tableaux of one shape")
        el = self.zero()
        el.blocks[bs][ps, pt] = 1
        return el

    def f_st(self, s: StdTableau, t: StdTableau) -> AlgElement:
        """The seminormal element f_st, which is gamma_t E_st here."""
        return self.gammas[t] * self.matrix_unit(s, t)

    def idem(self, t: StdTableau) -> AlgElement:
        """The primitive idempotent (1/gamma_t) f_tt = E_tt."""
        return self.matrix_unit(t, t)

    def residue_of(self, t: StdTableau) -> tuple[int, ...]:
        return residue_seq(t, self.params.kappa, self.params.e)

    def content_of(self, t: StdTableau) -> tuple[int, ...]:
        return content_seq(t, self.params.kappa)


def regular_rep(params: AlgebraParams, cs: CoefficientSystem) -> RegularRep:
    return RegularRep(params, cs)


def relation_residuals(Ts, Ls, params: AlgebraParams,
                       identity: AlgElement) -> dict[str, float]:
    """Max residual of each defining relation family for the given images.

    Families: the cyclotomic polynomial of L_1, the quadratic of each T_r,
    commuting Jucys-Murphy elements, distant T-T and T-L commutation, the
    braid relation, and L_{r+1}(T_r - xi + 1) = T_r L_r + 1.
    """
    xi = params.xi
    one = identity
    res = {k: 0.0 for k in ("cyclotomic", "quadratic", "jm_commute",
                            "t_commute", "braid", "tl_commute", "mixed")}
    poly = one
    for kap in params.kappa:
        poly = poly @ (Ls[0] - params.qint(kap) * one)
    res["cyclotomic"] = poly.max_abs()
    for T in Ts:
        res["quadratic"] = max(res["quadratic"],
                               ((T + one) @ (T - xi * one)).max_abs())
    for a in range(len(Ls)):
        for b in range(a + 1, len(Ls)):
            res["jm_commute"] = max(res["jm_commute"],
                                    (Ls[a] @ Ls[b] - Ls[b] @ Ls[a]).max_abs())
    for a in range(len(Ts)):
        for b in range(a + 2, len(Ts)):
            res["t_commute"] = max(res["t_commute"],
                                   (Ts[a] @ Ts[b] - Ts[b] @ Ts[a]).max_abs())
    for a in range(len(Ts) - 1):
        lhs = Ts[a] @ Ts[a + 1] @ Ts[a]
        rhs = Ts[a + 1] @ Ts[a] @ Ts[a + 1]
        res["braid"] = max(res["braid"], (lhs - rhs).max_abs())
    for r in range(len(Ts)):
        for s in range(len(Ls)):
            if s in (r, r + 1):
                continue
            res["tl_commute"] = max(res["tl_commute"],
                                    (Ts[r] @ Ls[s] - Ls[s] @ Ts[r]).max_abs())
    for r in range(len(Ts)):
        lhs = Ls[r + 1] @ (Ts[r] - (xi - 1) * one)
        rhs = Ts[r] @ Ls[r] + one
        res["mixed"] = max(res["mixed"], (lhs - rhs).max_abs())
    return res


def verify_relations(rep: RegularRep) -> dict[str, float]:
    return relation_residuals(rep.Ts, rep.Ls, rep.params, rep.identity())


def reduced_word(perm: tuple[int, ...]) -> list[int]:
    """A reduced word for the permutation in one-line notation.

    Leftmost-descent bubble sort: repeatedly swap the first descent of the
    one-line word; the recorded swaps, reversed, give a reduced expression
    s_{i_1} ... s_{i_k} of minimal length (the inversion number).
    """
    w = list(perm)
    swaps = []
    while True:
        for i in range(len(w) - 1):
            if w[i] > w[i + 1]:
                w[i], w[i + 1] = w[i + 1], w[i]
                swaps.append(i + 1)
                break
        else:
            break
    return list(reversed(swaps))


def t_word(rep: RegularRep, perm: tuple[int, ...]) -> AlgElement:
    """T_w along the deterministic reduced word; independent of the word
    by the braid and commutation relations (a tested property)."""
    el = rep.identity()
    for i in reduced_word(perm):
        el = el @ rep.Ts[i - 1]
    return el


def _all_t_words(rep: RegularRep) -> dict[tuple[int, ...], AlgElement]:
    """T_w for every permutation, by breadth-first growth along swaps that
    increase the inversion number (so every product is along a reduced word)."""
    n = rep.params.n
    ident = tuple(range(1, n + 1))
    table = {ident: rep.identity()}
    frontier = [ident]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(n - 1):
                if w[i] < w[i + 1]:
                    u = list(w)
                    u[i], u[i + 1] = u[i + 1], u[i]
                    u = tuple(u)
                    if u not in table:
                        table[u] = table[w] @ rep.Ts[i]
                        nxt.append(u)
        frontier = nxt
    return table


@dataclass
class AKBasis:
    """The word basis, its labels, reduced words, and vectorised matrix."""

    labels: list[tuple[tuple[int, ...], tuple[int, ...]]]
    elements: list[AlgElement]
    matrix: np.ndarray  # columns are vectorised basis elements
    words: dict[tuple[int, ...], list[int]]

    def rank(self, tol: float) -> int:
        return rank_of_matrix(self.matrix, tol)

    def solve(self, x: AlgElement) -> np.ndarray:
        coeffs, *_ = np.linalg.lstsq(self.matrix, x.vec(), rcond=None)
        return coeffs


def ak_basis(rep: RegularRep) -> AKBasis:
    """All level^n * n! elements L_1^g1 ... L_n^gn T_w as matrices."""
    params = rep.params
    n, level = params.n, params.level
    twords = _all_t_words(rep)
    perms = sorted(twords)
    words = {p: reduced_word(p) for p in perms}
    labels = []
    elements = []
    for gamma in itertools.product(range(level), repeat=n):
        lpow = rep.identity()
        for k, g in enumerate(gamma):
            for _ in range(g):
                lpow = lpow @ rep.Ls[k]
        for p in perms:
            labels.append((gamma, p))
            elements.append(lpow @ twords[p])
    matrix = np.stack([el.vec() for el in elements], axis=1)
    return AKBasis(labels, elements, matrix, words)


def rank_of_matrix(m: np.ndarray, tol: float) -> int:
    """Numerical rank via singular values above tol * largest; warns when
    values cluster within two decades of the cut."""
    if m.size == 0:
        return 0
    svals = np.linalg.svd(np.asarray(m, dtype=np.complex128),
                          compute_uv=False)
    top = svals[0] if len(svals) else 0.0
    if top == 0.0:
        return 0
    cut = tol * top
    near = np.sum((svals > cut * 1e-2) & (svals < cut * 1e2))
    if near:
        warnings.warn(f"{near} singular values within two decades of the "
                      f"rank threshold {cut:.3e}", RuntimeWarning)
    return int(np.sum(svals > cut))


def rank_of_span(elements, tol: float) -> int:
    """Numerical rank of a family of algebra elements (or plain vectors)."""
    vecs = [el.vec() if isinstance(el, AlgElement) else np.asarray(el).ravel()
            for el in elements]
    return rank_of_matrix(np.stack(vecs, axis=1), tol)


def fixed_subspace_dim(phi: np.ndarray, tol: float) -> int:
    """Dimension of the +1 eigenspace of an involutive map on a span,
    computed as dim - rank(phi - 1)."""
    phi = np.asarray(phi)
    n = phi.shape[0]
    invol = float(np.max(np.abs(phi @ phi - np.eye(n)))) if n else 0.0
    if invol > max(tol, 1e-6):
        warnings.warn(f"map is not involutive to {invol:.3e}", RuntimeWarning)
    return n - rank_of_matrix(phi - np.eye(n), tol)
