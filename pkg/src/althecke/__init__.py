"""Cyclotomic Hecke algebras in seminormal form, the hash involution, and
the irreducible modules of their alternating fixed-point subalgebras."""

from .scalars import (
    AlgebraParams,
    NonSemisimpleError,
    approx_eq,
    quantum_int,
    sqrt_conventional,
)
from .tableaux import (
    Multipartition,
    StdTableau,
    apply_transposition,
    axial_distance,
    conjugate,
    content,
    content_seq,
    dominates,
    enum_multipartitions,
    enum_std_tableaux,
    final_tableau,
    from_rows,
    initial_tableau,
    mp_classes,
    residue_classes,
    residue_seq,
    std_plus,
)
from .seminormal import (
    CoefficientSystem,
    GammaTable,
    SpechtBlock,
    alpha_alternating,
    alpha_james,
    ariki_p,
    f_matrix,
    gamma_table,
    idempotent_f,
    specht_block,
    verify_coefficient_axioms,
)
from .hecke import (
    AKBasis,
    AlgElement,
    RegularRep,
    ak_basis,
    fixed_subspace_dim,
    rank_of_span,
    reduced_word,
    regular_rep,
    t_word,
    verify_relations,
)
from .alternating import (
    AltIrrep,
    Classification,
    HashInvolution,
    alt_dimension,
    alt_spanning_set,
    check_hash_calculus,
    classify,
    epsilon_element,
    hash_element,
    hash_images,
    residue_idempotent,
    restricted_module,
    split_modules,
)

__version__ = "0.1.0"
