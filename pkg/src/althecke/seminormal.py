"""Seminormal coefficient systems, gamma scalars, Specht blocks, idempotents.

A coefficient system assigns a scalar alpha_r(t) to every standard tableau t
with s_r * t standard (zero otherwise), subject to three axioms:

  (i)   alpha_k(t) alpha_m(s_k t) = alpha_m(t) alpha_k(s_m t) for |k - m| > 1;
  (ii)  the braid-triple identity along the two reduced paths from t to
        s_r s_{r+1} s_r t;
  (iii) alpha_r(t) alpha_r(v) = [1 + rho_r(t)][1 + rho_r(v)] /
        ([rho_r(t)][rho_r(v)]) for v = s_r t standard,

where rho_r(t) is the axial distance.  Two systems are provided:

  * "james":        alpha_r(t) = [1 + rho]/[rho];
  * "alternating":  alpha_r(t) = sgn(rho) * i * sqrt(xi) *
                    sqrt([h - 1]) * sqrt([h + 1]) / [h]  with h = |rho|.

The alternating system is the ratio system rescaled by the diagonal change
of basis mu_t = prod_{j<k} g(c_j(t) - c_k(t)) (g supported on negative
differences), so it inherits the axioms; the sign of rho flips both under
swapping r, r+1 and under conjugation, which gives alpha_r(t) = -alpha_r(t')
for symmetric multicharges.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .scalars import AlgebraParams, NonSemisimpleError
from .tableaux import (
    Multipartition,
    StdTableau,
    apply_transposition,
    axial_distance,
    content,
    content_seq,
    enum_multipartitions,
    enum_std_tableaux,
    initial_tableau,
    standard_neighbors,
)


class PathInconsistencyError(RuntimeError):
    """Two transposition paths produced different gamma values."""


def ariki_p(params: AlgebraParams) -> complex:
    """Semisimplicity criterion: [1]...[n] * prod over component pairs of
    [kappa_r + d - kappa_s] for |d| < n.  Zero means not semisimple."""
    value = 1 + 0j
    for k in range(1, params.n + 1):
        value *= params.qint(k)
    for r in range(params.level):
        for s in range(r + 1, params.level):
            for d in range(-params.n + 1, params.n):
                value *= params.qint(params.kappa[r] + d - params.kappa[s])
    return value


def require_semisimple(params: AlgebraParams) -> None:
    if abs(ariki_p(params)) <= params.tol:
        raise NonSemisimpleError(
            f"parameters {params.describe()} are not semisimple (P = 0); "
            "seminormal constructions are unavailable")


def alpha_james(t: StdTableau, r: int, params: AlgebraParams) -> complex:
    """The ratio choice [1 + rho]/[rho]; zero when s_r t is not standard."""
    if apply_transposition(t, r) is None:
        return 0j
    rho = axial_distance(t, r, params.kappa)
    return params.qint(1 + rho) / params.qint(rho)


def alpha_alternating(t: StdTableau, r: int, params: AlgebraParams) -> complex:
    """sgn(rho) * i * sqrt(xi) * sqrt([h-1]) * sqrt([h+1]) / [h], h = |rho|.

    Antisymmetric under conjugation for symmetric multicharges and matching
    i * sqrt(xi) * sqrt([3]) / [2] on tableaux with 2 in the first row and 3
    in the first column.
    """
    if apply_transposition(t, r) is None:
        return 0j
    rho = axial_distance(t, r, params.kappa)
    h = abs(rho)
    if h < 2:
        raise ValueError(
            f"axial distance {rho} with a standard swap cannot occur")
    denom = params.qint(h)
    if abs(denom) <= params.tol:
        raise NonSemisimpleError(f"[{h}] vanishes; parameters not semisimple")
    mag = 1j * params.sqrt_xi * params.qsqrt(h - 1) * params.qsqrt(h + 1) / denom
    return mag if rho > 0 else -mag


@dataclass(frozen=True)
class CoefficientSystem:
    """One of the two concrete coefficient systems for a parameter set."""

    params: AlgebraParams
    kind: str = "alternating"

    def __post_init__(self):
        if self.kind not in ("james", "alternating"):
            raise ValueError(f"unknown coefficient system kind {self.kind!r}")
        if self.kind == "alternating" and not self.params.is_symmetric:
            raise ValueError(
                "the alternating coefficient system needs a symmetric multicharge")

    def alpha(self, t: StdTableau, r: int) -> complex:
        if self.kind == "james":
            return alpha_james(t, r, self.params)
        return alpha_alternating(t, r, self.params)


def _alpha_or_zero(cs: CoefficientSystem, t, r: int) -> complex:
    """alpha with the zero conventions: zero for a missing tableau or when
    the swap leaves the standard set."""
    if t is None:
        return 0j
    return cs.alpha(t, r)


@dataclass
class AxiomReport:
    kind: str
    residuals: dict[str, float]

    @property
    def max_violation(self) -> float:
        return max(self.residuals.values())

    def passed(self, tol: float) -> bool:
        return self.max_violation < tol


def verify_coefficient_axioms(cs: CoefficientSystem, shapes=None) -> AxiomReport:
    """Exhaustively check the three axioms (and antisymmetry for the
    alternating system) over all standard tableaux of all shapes."""
    params = cs.params
    if shapes is None:
        shapes = enum_multipartitions(params.n, params.level)
    n = params.n
    res = {"commuting": 0.0, "braid": 0.0, "pair_product": 0.0}
    if cs.kind == "alternating":
        res["antisymmetry"] = 0.0
    for lam in shapes:
        for t in enum_std_tableaux(lam):
            for r in range(1, n):
                v = apply_transposition(t, r)
                a_t = cs.alpha(t, r)
                if v is None:
                    res["pair_product"] = max(res["pair_product"], abs(a_t))
                else:
                    rho_t = axial_distance(t, r, params.kappa)
                    rho_v = axial_distance(v, r, params.kappa)
                    target = (params.qint(1 + rho_t) * params.qint(1 + rho_v)
                              / (params.qint(rho_t) * params.qint(rho_v)))
                    res["pair_product"] = max(
                        res["pair_product"], abs(a_t * cs.alpha(v, r) - target))
                if cs.kind == "alternating":
                    res["antisymmetry"] = max(
                        res["antisymmetry"],
                        abs(a_t + cs.alpha(t.conjugate(), r)))
            for k in range(1, n):
                for m in range(k + 2, n):
                    tk = apply_transposition(t, k)
                    tm = apply_transposition(t, m)
                    lhs = cs.alpha(t, k) * _alpha_or_zero(cs, tk, m)
                    rhs = cs.alpha(t, m) * _alpha_or_zero(cs, tm, k)
                    res["commuting"] = max(res["commuting"], abs(lhs - rhs))
            for r in range(1, n - 1):
                t1 = apply_transposition(t, r)
                t12 = apply_transposition(t1, r + 1) if t1 is not None else None
                lhs = (cs.alpha(t, r) * _alpha_or_zero(cs, t1, r + 1)
                       * _alpha_or_zero(cs, t12, r))
                u1 = apply_transposition(t, r + 1)
                u12 = apply_transposition(u1, r) if u1 is not None else None
                rhs = (cs.alpha(t, r + 1) * _alpha_or_zero(cs, u1, r)
                       * _alpha_or_zero(cs, u12, r + 1))
                res["braid"] = max(res["braid"], abs(lhs - rhs))
    return AxiomReport(cs.kind, res)


@dataclass
class GammaTable:
    """Structure constants gamma_t, normalised by gamma = 1 on the
    row-filled tableau of every shape."""

    values: dict[StdTableau, complex]
    path_residual: float

    def __getitem__(self, t: StdTableau) -> complex:
        return self.values[t]


def gamma_table(cs: CoefficientSystem, shapes=None) -> GammaTable:
    """Propagate gamma_u = gamma_t * alpha_r(u)/alpha_r(t) from the
    row-filled tableau of each shape; every edge is checked both ways."""
    params = cs.params
    require_semisimple(params)
    if shapes is None:
        shapes = enum_multipartitions(params.n, params.level)
    values: dict[StdTableau, complex] = {}
    worst = 0.0
    for lam in shapes:
        t0 = initial_tableau(lam)
        values[t0] = 1 + 0j
        queue = [t0]
        while queue:
            t = queue.pop()
            for r, u in standard_neighbors(t):
                cand = values[t] * cs.alpha(u, r) / cs.alpha(t, r)
                if u in values:
                    worst = max(worst, abs(values[u] - cand))
                else:
                    values[u] = cand
                    queue.append(u)
    if worst > params.tol:
        raise PathInconsistencyError(
            f"gamma values disagree along different paths by {worst:.3e}")
    for t, g in values.items():
        if abs(g) <= params.tol:
            raise NonSemisimpleError(f"gamma for {t} vanished")
    return GammaTable(values, worst)


@dataclass(frozen=True)
class SpechtBlock:
    """Generator matrices on one irreducible block, basis in tableau order.

    Columns hold images of basis vectors: L_k f_t = [c_k(t)] f_t and
    T_r f_t = alpha_r(t) f_u - (1/[rho_r(t)]) f_t with u = s_r t.
    """

    shape: Multipartition
    basis: tuple[StdTableau, ...]
    lmats: tuple[np.ndarray, ...]
    tmats: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def generator(self, name: str) -> np.ndarray:
        kind, idx = name[0].upper(), int(name[1:])
        if kind == "L":
            return self.lmats[idx - 1]
        if kind == "T":
            return self.tmats[idx - 1]
        raise KeyError(name)

    def to_json(self):
        gens = {}
        for k, m in enumerate(self.lmats, start=1):
            gens[f"L{k}"] = _matrix_json(m)
        for r, m in enumerate(self.tmats, start=1):
            gens[f"T{r}"] = _matrix_json(m)
        return {
            "lambda": self.shape.to_json(),
            "basis": [t.to_json() for t in self.basis],
            "generators": gens,
        }


def _matrix_json(m: np.ndarray):
    def num(x: float) -> float:
        return 0.0 if x == 0 else float(x)

    return [[[num(z.real), num(z.imag)] for z in row] for row in np.asarray(m)]


def specht_block(shape: Multipartition, cs: CoefficientSystem,
                 gammas: GammaTable | None = None) -> SpechtBlock:
    """Matrices of all generators on the block labelled by the shape."""
    params = cs.params
    basis = enum_std_tableaux(shape)
    d = len(basis)
    index = {t: i for i, t in enumerate(basis)}
    lmats = []
    for k in range(1, params.n + 1):
        m = np.zeros((d, d), dtype=params.dtype)
        for i, t in enumerate(basis):
            m[i, i] = params.qint(content(t, k, params.kappa))
        lmats.append(m)
    tmats = []
    for r in range(1, params.n):
        m = np.zeros((d, d), dtype=params.dtype)
        for j, t in enumerate(basis):
            rho = axial_distance(t, r, params.kappa)
            q = params.qint(rho)
            if abs(q) <= params.tol:
                raise NonSemisimpleError(
                    f"[rho] = [{rho}] vanishes on shape {shape}")
            m[j, j] = -1 / q
            u = apply_transposition(t, r)
            if u is not None:
                m[index[u], j] = cs.alpha(t, r)
        tmats.append(m)
    return SpechtBlock(shape, basis, tuple(lmats), tuple(tmats))


def _bfs_path(start: StdTableau, goal: StdTableau):
    """Steps (r, tableau-before-step) along a transposition path."""
    if start == goal:
        return []
    parents = {start: None}
    queue = [start]
    while queue:
        t = queue.pop(0)
        for r, u in standard_neighbors(t):
            if u not in parents:
                parents[u] = (t, r)
                if u == goal:
                    steps = []
                    cur = goal
                    while parents[cur] is not None:
                        prev, r0 = parents[cur]
                        steps.append((r0, prev))
                        cur = prev
                    return list(reversed(steps))
                queue.append(u)
    raise RuntimeError(f"no transposition path from {start} to {goal}")


def f_matrix(s: StdTableau, t: StdTableau, cs: CoefficientSystem,
             gammas: GammaTable, block: SpechtBlock | None = None) -> np.ndarray:
    """Matrix of the seminormal element f_st on its block, built by walking
    both indices from the row-filled tableau:

        f_{u t} = (T_r + 1/[rho_r(s)]) f_{s t} / alpha_r(s),   u = s_r s,

    and the star-symmetric rule on the right.  Equals gamma_t E_{s,t}.
    """
    if s.shape != t.shape:
        raise ValueError("both tableaux must have the same shape")
    params = cs.params
    if block is None:
        block = specht_block(s.shape, cs, gammas)
    index = {u: i for i, u in enumerate(block.basis)}
    t0 = initial_tableau(s.shape)
    m = np.zeros((block.dim, block.dim), dtype=params.dtype)
    m[index[t0], index[t0]] = gammas[t0]
    for r, cur in _bfs_path(t0, s):
        rho = axial_distance(cur, r, params.kappa)
        m = (block.tmats[r - 1] @ m + m / params.qint(rho)) / cs.alpha(cur, r)
    for r, cur in _bfs_path(t0, t):
        rho = axial_distance(cur, r, params.kappa)
        m = (m @ block.tmats[r - 1] + m / params.qint(rho)) / cs.alpha(cur, r)
    return m


def idempotent_f(t: StdTableau, rep):
    """The primitive idempotent attached to t, computed two ways.

    Route one is the Jucys-Murphy interpolation: over every position k and
    every residue value occurring there among all standard tableaux of all
    shapes, multiply (L_k - [c]) / ([c_k(t)] - [c]) for residues differing
    from the one of t.  Route two is the matrix unit (1/gamma_t) f_tt.
    Both must agree; the interpolated element is returned.
    """
    params = rep.params
    diag = np.ones(rep.D, dtype=params.dtype)
    cseq = content_seq(t, params.kappa)
    for k in range(1, params.n + 1):
        col = rep.content_table[k - 1]
        bracket_col = rep.bracket_table[k - 1]
        bt = params.qint(cseq[k - 1])
        rt = params.residue(cseq[k - 1])
        reps_by_res = {}
        for c in col:
            reps_by_res.setdefault(params.residue(int(c)), int(c))
        for rv, c0 in sorted(reps_by_res.items()):
            if rv == rt:
                continue
            bc = params.qint(c0)
            diag = diag * (bracket_col - bc) / (bt - bc)
    product = rep.from_diag(diag)
    unit = rep.matrix_unit(t, t)
    resid = (product - unit).max_abs()
    if resid > params.tol:
        raise PathInconsistencyError(
            f"idempotent routes disagree for {t}: {resid:.3e}")
    return product


def star_transpose_residual(rep) -> float:
    """Residual of rho(g) = G^-1 rho(g)^T G per block, G = diag(gamma)."""
    worst = 0.0
    for bidx, block in enumerate(rep.blocks):
        g = np.array([rep.gammas[t] for t in block.basis], dtype=rep.params.dtype)
        for mat in list(block.lmats) + list(block.tmats):
            twisted = (mat.T * g[None, :]) / g[:, None]
            worst = max(worst, float(np.max(np.abs(mat - twisted))))
    return worst
