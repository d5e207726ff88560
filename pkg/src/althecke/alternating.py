"""The hash involution and the alternating subalgebra it fixes.

The hash map sends T_i to -xi * T_i^(-1) = -T_i + (xi - 1) and inverts the
multiplicative Jucys-Murphy elements; for a symmetric multicharge it is an
algebra involution, and its fixed-point subalgebra has dimension
level^n n!/2.  Irreducible modules of the subalgebra come in two kinds:
restrictions of blocks for conjugate pairs of shapes, and the two halves of
a self-conjugate block split along tableau-conjugation symmetry.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hecke import (
    AKBasis,
    AlgElement,
    RegularRep,
    ak_basis,
    rank_of_span,
    relation_residuals,
)
from .scalars import AlgebraParams
from .tableaux import (
    Multipartition,
    StdTableau,
    apply_transposition,
    axial_distance,
    enum_std_tableaux,
    format_multipartition,
    mp_classes,
    negate_residues,
    std_plus,
)


class HypothesisViolationError(ValueError):
    """A self-negating residue sequence occurs, so the sign element and the
    dimension count are unavailable."""


class DimensionMismatchError(RuntimeError):
    pass


class ClassificationError(RuntimeError):
    pass


@dataclass
class HashImages:
    ts: list[AlgElement]
    ls: list[AlgElement]


def _hash_generator_images(Ts, Ls, identity: AlgElement,
                           params: AlgebraParams) -> tuple[list, list]:
    """Images of the generators under the hash map.

    T_i maps to -T_i + (xi - 1); the inverse -xi T_i^(-1) is algebraic via
    the quadratic relation, so no numerical inversion of T is needed.  For
    xi != 1 the multiplicative elements Lt_k = (xi - 1) L_k + 1 invert; at
    xi = 1 the images follow the recursion L_{k+1} = T_k L_k T_k + T_k.
    """
    xi = params.xi
    ths = [-T + (xi - 1) * identity for T in Ts]
    if xi == 1:
        lhs = [-Ls[0]]
        for k in range(1, len(Ls)):
            prev = lhs[k - 1]
            lhs.append(Ts[k - 1] @ prev @ Ts[k - 1] - Ts[k - 1])
    else:
        lhs = []
        for L in Ls:
            blocks = []
            for blk, ident in zip(L.blocks, identity.blocks):
                lt = (xi - 1) * blk + ident
                blocks.append((np.linalg.inv(lt) - ident) / (xi - 1))
            lhs.append(AlgElement(tuple(blocks)))
    return ths, lhs


def hash_images(rep: RegularRep) -> HashImages:
    if not rep.params.is_symmetric:
        raise ValueError("the hash map is an involution only for symmetric "
                         "multicharges")
    ths, lhs = _hash_generator_images(rep.Ts, rep.Ls, rep.identity(),
                                      rep.params)
    return HashImages(ths, lhs)


class HashInvolution:
    """The hash map realised as a linear map on the block-diagonal arena.

    Since the word basis spans the whole space, hashing an element means
    solving for its basis coefficients and replacing every basis element by
    its hash image; both steps fold into one precomputed matrix.
    """

    def __init__(self, rep: RegularRep, basis: AKBasis | None = None):
        self.rep = rep
        self.basis = basis if basis is not None else ak_basis(rep)
        self.images = hash_images(rep)
        hashed = []
        for (gamma, perm), _ in zip(self.basis.labels, self.basis.elements):
            el = rep.identity()
            for k, g in enumerate(gamma):
                for _ in range(g):
                    el = el @ self.images.ls[k]
            for i in self.basis.words[perm]:
                el = el @ self.images.ts[i - 1]
            hashed.append(el)
        self.hashed_elements = hashed
        bh = np.stack([el.vec() for el in hashed], axis=1)
        self._binv = np.linalg.inv(self.basis.matrix)
        self.matrix = bh @ self._binv
        self._bh = bh

    def apply(self, x: AlgElement) -> AlgElement:
        return self.rep.unvec(self.matrix @ x.vec())

    def coord_matrix(self) -> np.ndarray:
        """The hash map in word-basis coordinates."""
        return self._binv @ self._bh

    def involution_residual(self) -> float:
        m = self.matrix
        return float(np.max(np.abs(m @ m - np.eye(m.shape[0]))))


def hash_element(x: AlgElement, inv: HashInvolution) -> AlgElement:
    """Hash of an arbitrary element; the word basis spans the whole
    block-diagonal space here, so the coefficient solve cannot fail."""
    return inv.apply(x)


def hashed_generator_relations(rep: RegularRep,
                               inv: HashInvolution) -> dict[str, float]:
    """The defining relations evaluated on the hashed generator images."""
    return relation_residuals(inv.images.ts, inv.images.ls, rep.params,
                              rep.identity())


def double_hash_residual(rep: RegularRep, inv: HashInvolution) -> float:
    ths2, lhs2 = _hash_generator_images(inv.images.ts, inv.images.ls,
                                        rep.identity(), rep.params)
    worst = 0.0
    for a, b in zip(ths2, rep.Ts):
        worst = max(worst, (a - b).max_abs())
    for a, b in zip(lhs2, rep.Ls):
        worst = max(worst, (a - b).max_abs())
    return max(worst, inv.involution_residual())


def occurring_residue_sequences(rep: RegularRep):
    """Residue sequence -> list of standard tableaux realising it."""
    out: dict[tuple[int, ...], list[StdTableau]] = {}
    for t in rep.tableaux:
        out.setdefault(rep.residue_of(t), []).append(t)
    return out


def residue_idempotent(rep: RegularRep, iseq) -> AlgElement:
    """Sum of the tableau idempotents over tableaux with this residue
    sequence; zero when none exists."""
    iseq = tuple(iseq)
    el = rep.zero()
    for t in rep.tableaux:
        if rep.residue_of(t) == iseq:
            el = el + rep.idem(t)
    return el


def hypothesis_ok(params: AlgebraParams) -> bool:
    """Fewer multicharge entries vanish mod e than there are strands."""
    zeros = sum(1 for k in params.kappa if params.residue(k) == 0)
    return zeros < params.n


def self_negative_sequences(rep: RegularRep):
    e = rep.params.e
    return sorted({i for i in occurring_residue_sequences(rep)
                   if negate_residues(i, e) == i})


def epsilon_element(rep: RegularRep) -> AlgElement:
    """The sign element: sum over residue classes {i, -i} of size two of
    f_i+ - f_-i+; squares to the identity and anti-commutes with hash."""
    bad = self_negative_sequences(rep)
    if bad or not hypothesis_ok(rep.params):
        raise HypothesisViolationError(
            "self-negating residue sequences occur: "
            + ", ".join(str(i) for i in bad))
    e = rep.params.e
    occurring = occurring_residue_sequences(rep)
    el = rep.zero()
    seen = set()
    for iseq in sorted(occurring):
        neg = negate_residues(iseq, e)
        rep_seq = min(iseq, neg)
        if rep_seq in seen:
            continue
        seen.add(rep_seq)
        el = el + residue_idempotent(rep, rep_seq)
        el = el - residue_idempotent(rep, negate_residues(rep_seq, e))
    return el


def alt_dimension_report(rep: RegularRep, inv: HashInvolution) -> dict:
    """Computed fixed-subalgebra dimension versus level^n n!/2.

    The fixed space is spanned by {b + b^# : b in the word basis} because 2
    is invertible; its numerical rank is the dimension.  When a
    self-negating residue sequence occurs the counting argument breaks, so
    the expectation is reported but not asserted.
    """
    params = rep.params
    b = inv.basis.matrix
    symm = b + inv.matrix @ b
    computed = rank_of_span(list(symm.T), params.tol)
    expected2 = rep.dim_algebra
    ok = hypothesis_ok(params) and not self_negative_sequences(rep)
    report = {
        "computed": computed,
        "expected_doubled": expected2,
        "expected": expected2 // 2 if expected2 % 2 == 0 else expected2 / 2,
        "hypothesis_ok": ok,
        "asserted": ok,
    }
    if ok:
        eps = epsilon_element(rep)
        report["eps_square_residual"] = (eps @ eps - rep.identity()).max_abs()
        report["eps_hash_residual"] = (inv.apply(eps) + eps).max_abs()
    return report


def alt_dimension(rep: RegularRep, inv: HashInvolution) -> int:
    """Dimension of the hash-fixed subalgebra; asserted to be
    level^n n!/2 whenever the multicharge hypothesis holds."""
    report = alt_dimension_report(rep, inv)
    if report["asserted"] and report["computed"] * 2 != report["expected_doubled"]:
        raise DimensionMismatchError(
            f"fixed subalgebra has dimension {report['computed']}, "
            f"expected {report['expected_doubled']}/2")
    return report["computed"]


def alt_spanning_set(rep: RegularRep, inv: HashInvolution,
                     check: bool = True) -> list[AlgElement]:
    """The symmetrised family {b + b^#} spanning the fixed subalgebra."""
    out = []
    for el in inv.basis.elements:
        out.append(el + inv.apply(el))
    if check and hypothesis_ok(rep.params) and not self_negative_sequences(rep):
        expected = rep.dim_algebra // 2
        got = rank_of_span(out, rep.params.tol)
        if got != expected:
            raise DimensionMismatchError(
                f"symmetrised family has rank {got}, expected {expected}")
    return out


def check_hash_calculus(rep: RegularRep, inv: HashInvolution) -> dict[str, float]:
    """Matrix identities tying hash to the seminormal structure.

    Families: eigenvalues of hashed Jucys-Murphy elements on diagonal
    seminormal elements; hash of tableau idempotents, of diagonal
    seminormal elements, of residue idempotents, of one-step raising
    elements; and the action of T_r on hashed seminormal elements matching
    the negated coefficient system.
    """
    if rep.cs.kind != "alternating":
        raise ValueError("the hash calculus checks need the alternating "
                         "coefficient system")
    params = rep.params
    res = {k: 0.0 for k in ("jm_eigenvalue", "tableau_idempotent",
                            "diagonal_seminormal", "residue_idempotent",
                            "raising_element", "negated_action")}
    gam = rep.gammas
    for t in rep.tableaux:
        tc = t.conjugate()
        ftt = rep.f_st(t, t)
        for k in range(params.n):
            ck = rep.content_of(tc)[k]
            lhs = inv.images.ls[k] @ ftt
            res["jm_eigenvalue"] = max(res["jm_eigenvalue"],
                                       (lhs - params.qint(ck) * ftt).max_abs())
        res["tableau_idempotent"] = max(
            res["tableau_idempotent"],
            (inv.apply(rep.idem(t)) - rep.idem(tc)).max_abs())
        res["diagonal_seminormal"] = max(
            res["diagonal_seminormal"],
            (inv.apply(ftt) - (gam[t] / gam[tc]) * rep.f_st(tc, tc)).max_abs())
    e = params.e
    for iseq in sorted(occurring_residue_sequences(rep)):
        lhs = inv.apply(residue_idempotent(rep, iseq))
        rhs = residue_idempotent(rep, negate_residues(iseq, e))
        res["residue_idempotent"] = max(res["residue_idempotent"],
                                        (lhs - rhs).max_abs())
    for bidx, block in enumerate(rep.blocks):
        for s in block.basis:
            sc = s.conjugate()
            for r in range(1, params.n):
                u = apply_transposition(s, r)
                if u is not None:
                    coeff = -(rep.cs.alpha(sc, r) * gam[s]) / \
                        (rep.cs.alpha(s, r) * gam[sc])
                    lhs = inv.apply(rep.f_st(u, s))
                    rhs = coeff * rep.f_st(u.conjugate(), sc)
                    res["raising_element"] = max(res["raising_element"],
                                                 (lhs - rhs).max_abs())
            for t in block.basis:
                fst_h = inv.apply(rep.f_st(s, t))
                for r in range(1, params.n):
                    u = apply_transposition(s, r)
                    rho_c = axial_distance(sc, r, params.kappa)
                    rhs = (-1 / params.qint(rho_c)) * fst_h
                    if u is not None:
                        rhs = rhs - rep.cs.alpha(s, r) * inv.apply(rep.f_st(u, t))
                    lhs = rep.Ts[r - 1] @ fst_h
                    res["negated_action"] = max(res["negated_action"],
                                                (lhs - rhs).max_abs())
    return res


@dataclass
class AltIrrep:
    """One irreducible module of the fixed subalgebra with certificates."""

    label: str
    kind: str  # "restricted" | "split"
    dim: int
    traces: np.ndarray
    commutant_dim: int
    details: dict = field(default_factory=dict)

    def to_json(self):
        out = {
            "label": self.label,
            "kind": self.kind,
            "dim": self.dim,
            "commutant_dim": self.commutant_dim,
            "traces": [_cnum(z) for z in self.traces],
        }
        for key, val in sorted(self.details.items()):
            if isinstance(val, complex):
                out[key] = _cnum(val)
            elif isinstance(val, float):
                out[key] = val
            else:
                out[key] = val
        return out


def _cnum(z: complex):
    z = complex(z)
    return [0.0 if z.real == 0 else z.real, 0.0 if z.imag == 0 else z.imag]


def commutant_dimension(mats, tol: float) -> int:
    """Dimension of {X : XM = MX for all M}, via the kernel of the stacked
    row-major Sylvester maps I (x) M^T - M (x) I."""
    d = mats[0].shape[0]
    eye = np.eye(d)
    rows = [np.kron(eye, m.T) - np.kron(m, eye) for m in mats]
    stacked = np.concatenate(rows, axis=0)
    svals = np.linalg.svd(stacked, compute_uv=False)
    top = svals[0] if len(svals) and svals[0] > 0 else 1.0
    return d * d - int(np.sum(svals > tol * top))


def restricted_module(rep: RegularRep, shape: Multipartition,
                      spanning) -> AltIrrep:
    """Restriction of the block of a non-self-conjugate shape, with the
    entry-conjugation intertwiner onto the conjugate block certified."""
    conj = shape.conjugate()
    if conj == shape:
        raise ValueError("restricted modules need a non-self-conjugate shape")
    bidx = rep.block_index(shape)
    cidx = rep.block_index(conj)
    basis = rep.blocks[bidx].basis
    cbasis = rep.blocks[cidx].basis
    index_c = {t: i for i, t in enumerate(cbasis)}
    d = len(basis)
    tau = np.zeros((d, d), dtype=rep.params.dtype)
    for j, t in enumerate(basis):
        tau[index_c[t.conjugate()], j] = 1
    mats = [el.blocks[bidx] for el in spanning]
    tau_res = max(float(np.max(np.abs(el.blocks[cidx] @ tau - tau @ m)))
                  for el, m in zip(spanning, mats))
    traces = np.array([np.trace(m) for m in mats])
    cdim = commutant_dimension(mats, rep.params.tol)
    label = f"S[{format_multipartition(shape)}]"
    return AltIrrep(label, "restricted", d, traces, cdim,
                    {"class": [shape.to_json(), conj.to_json()],
                     "tau_residual": tau_res})


def split_modules(rep: RegularRep, shape: Multipartition,
                  spanning) -> tuple[AltIrrep, AltIrrep]:
    """The two halves of a self-conjugate block in the bases
    {(f_t +/- f_t')/2 : t in the chosen orbit representatives}.

    The halves are invariant only under the alternating coefficient
    system; any other choice is detected through the leakage residual.
    """
    if shape.conjugate() != shape:
        raise ValueError("split modules need a self-conjugate shape")
    bidx = rep.block_index(shape)
    basis = rep.blocks[bidx].basis
    index = {t: i for i, t in enumerate(basis)}
    plus_reps = std_plus(shape)
    d = len(basis)
    half = len(plus_reps)
    cob = np.zeros((d, d), dtype=rep.params.dtype)
    for j, t in enumerate(plus_reps):
        i1, i2 = index[t], index[t.conjugate()]
        cob[i1, j] += 0.5
        cob[i2, j] += 0.5
        cob[i1, half + j] += 0.5
        cob[i2, half + j] -= 0.5
    cob_inv = np.linalg.inv(cob)
    mats_plus, mats_minus = [], []
    leakage = 0.0
    for el in spanning:
        a = cob_inv @ el.blocks[bidx] @ cob
        leakage = max(leakage,
                      float(np.max(np.abs(a[:half, half:]))) if half else 0.0,
                      float(np.max(np.abs(a[half:, :half]))) if half else 0.0)
        mats_plus.append(a[:half, :half])
        mats_minus.append(a[half:, half:])
    if leakage > rep.params.tol:
        raise ClassificationError(
            f"the +/- subspaces of {shape} are not invariant "
            f"(leakage {leakage:.3e}); coefficient system is not alternating")
    name = format_multipartition(shape)
    out = []
    for sign, mats in (("+", mats_plus), ("-", mats_minus)):
        traces = np.array([np.trace(m) for m in mats])
        cdim = commutant_dimension(mats, rep.params.tol)
        out.append(AltIrrep(f"S({name}){sign}", "split", half, traces, cdim,
                            {"shape": shape.to_json(), "sign": sign,
                             "leakage": leakage}))
    return out[0], out[1]


@dataclass
class Classification:
    params: AlgebraParams
    irreps: list[AltIrrep]
    checks: dict
    sum_dim_sq: int
    expected_doubled: int

    @property
    def passed(self) -> bool:
        return all(c.get("pass", True) for c in self.checks.values())

    def to_json(self):
        return {
            "params": {
                "n": self.params.n,
                "level": self.params.level,
                "e": self.params.e,
                "kappa": list(self.params.kappa),
                "xi_one": self.params.xi == 1,
                "tol": self.params.tol,
            },
            "irreps": [ir.to_json() for ir in self.irreps],
            "checks": self.checks,
        }


def classify(rep: RegularRep, inv: HashInvolution) -> Classification:
    """The complete list of irreducibles of the fixed subalgebra.

    One restricted module per conjugate pair of shapes and a +/- pair per
    self-conjugate shape; certificates: commutant dimension one each,
    pairwise distinct trace vectors over the symmetrised spanning family,
    and the exact integer identity sum dim^2 = level^n n!/2.
    """
    params = rep.params
    if params.n < 2:
        raise ValueError("classification needs n >= 2")
    if rep.cs.kind != "alternating":
        raise ValueError("classification needs the alternating system")
    spanning = alt_spanning_set(rep, inv)
    irreps: list[AltIrrep] = []
    sum_sq = 0
    dims_ok = True
    for cls in mp_classes(rep.shapes):
        if len(cls) == 2:
            lam = cls[0]
            ir = restricted_module(rep, lam, spanning)
            dims_ok &= ir.dim == len(enum_std_tableaux(lam))
            irreps.append(ir)
            sum_sq += ir.dim ** 2
        else:
            lam = cls[0]
            plus, minus = split_modules(rep, lam, spanning)
            full = len(enum_std_tableaux(lam))
            dims_ok &= plus.dim == minus.dim == full // 2 and full % 2 == 0
            irreps.extend([plus, minus])
            sum_sq += plus.dim ** 2 + minus.dim ** 2
    if params.xi == 1 and params.n >= 3:
        t1t2 = rep.Ts[0] @ rep.Ts[1]
        for ir in irreps:
            ir.details["t1t2_trace"] = _restricted_trace(rep, ir, t1t2)
    expected2 = rep.dim_algebra
    checks = {
        "dim_formula": {"pass": bool(dims_ok)},
        "sum_squares": {
            "computed": sum_sq,
            "doubled": 2 * sum_sq,
            "expected_doubled": expected2,
            "pass": 2 * sum_sq == expected2,
        },
        "commutants": {
            "dims": [ir.commutant_dim for ir in irreps],
            "pass": all(ir.commutant_dim == 1 for ir in irreps),
        },
    }
    min_sep = np.inf
    for i in range(len(irreps)):
        for j in range(i + 1, len(irreps)):
            sep = float(np.max(np.abs(irreps[i].traces - irreps[j].traces)))
            min_sep = min(min_sep, sep)
    checks["pairwise_distinct"] = {
        "min_separation": None if min_sep is np.inf else min_sep,
        "pass": min_sep is np.inf or min_sep > params.tol,
    }
    tau_max = max((ir.details.get("tau_residual", 0.0) for ir in irreps),
                  default=0.0)
    leak_max = max((ir.details.get("leakage", 0.0) for ir in irreps),
                   default=0.0)
    checks["intertwiner"] = {"max_residual": tau_max,
                             "pass": tau_max < params.tol}
    checks["split_invariance"] = {"max_leakage": leak_max,
                                  "pass": leak_max < params.tol}
    cl = Classification(params, irreps, checks, sum_sq, expected2)
    failures = [k for k, c in checks.items() if not c.get("pass", True)]
    if failures:
        raise ClassificationError(
            "classification certificates failed: " + ", ".join(failures)
            + f" (checks: {checks})")
    return cl


def _restricted_trace(rep: RegularRep, ir: AltIrrep,
                      el: AlgElement) -> complex:
    """Trace of an element on one irreducible; for split halves the element
    must commute with the conjugation symmetry (true for hash-fixed
    elements, and for T_1 T_2 at xi = 1)."""
    if ir.kind == "restricted":
        shape = Multipartition(ir.details["class"][0])
        return complex(np.trace(el.blocks[rep.block_index(shape)]))
    shape = Multipartition(ir.details["shape"])
    bidx = rep.block_index(shape)
    basis = rep.blocks[bidx].basis
    index = {t: i for i, t in enumerate(basis)}
    plus_reps = std_plus(shape)
    half = len(plus_reps)
    d = len(basis)
    cob = np.zeros((d, d), dtype=rep.params.dtype)
    for j, t in enumerate(plus_reps):
        i1, i2 = index[t], index[t.conjugate()]
        cob[i1, j] += 0.5
        cob[i2, j] += 0.5
        cob[i1, half + j] += 0.5
        cob[i2, half + j] -= 0.5
    a = np.linalg.inv(cob) @ el.blocks[bidx] @ cob
    if ir.details["sign"] == "+":
        return complex(np.trace(a[:half, :half]))
    return complex(np.trace(a[half:, half:]))
