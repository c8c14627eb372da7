"""2-uniform tolerances on finite lattices: amicability, permutability, verification."""
from .lattice import (
    Lattice,
    LatticeError,
    NotALattice,
    NotAPoset,
    NotTransitiveReduction,
    canonical_form,
    chain,
    dual,
    enumerate_lattices,
    from_covers,
    glued_chain_sum,
    is_isomorphic,
    product,
    product_of,
)
from .tolerance import (
    BinaryRelation,
    Block,
    NotATolerance,
    NotTwoUniform,
    RelationImage,
    blocks,
    compose,
    enumerate_two_uniform,
    is_congruence,
    is_tolerance,
    is_two_uniform,
    permutes,
    factor_kernel,
    projection_kernel,
)
from .amicability import amicability_violations, classify, is_amicable, two_fold_roles
from .engine import (
    NotAmicable,
    NotInProduct,
    brute_force_witnesses,
    construct_witness,
    run_catalog,
    verify_lemmas_on,
    verify_theorem_on,
)

__version__ = "0.1.0"
