"""Twisted conjugacy classes, Reidemeister numbers and twisted
Burnside-Frobenius checks for finite groups and finitely generated abelian
groups."""

from ._kernels import BACKEND
from .abelian import (
    AbelianEndo,
    FgAbelianGroup,
    class_representatives,
    fixed_subgroup_size,
    rp_witness,
)
from .abelian import reidemeister_number as abelian_reidemeister_number
from .characters import (
    CharacterTableModP,
    character_table,
    dual_action,
    verify_twisted_burnside,
)
from .corpus import CorpusEntry, corpus_entry, standard_corpus
from .errors import (
    CapExceededError,
    ConsistencyError,
    InfiniteResultError,
    InputError,
    NotAutomorphismError,
    NotNormalError,
    ReidemeisterError,
)
from .extensions import (
    GroupExtension,
    check_bound_abelian_quotient,
    check_bound_nonabelian,
    check_class_epimorphism,
    check_fix_bound,
    induce,
)
from .groups import (
    Automorphism,
    FiniteGroup,
    TwistedPartition,
    enumerate_automorphisms,
    fixed_points,
    from_permutation_generators,
    inner_automorphism,
    reidemeister_number,
    shift_class_identity_check,
    twisted_classes,
)
from .linalg import INFINITE, IntMatrix, cokernel_order, smith_normal_form
from .torus import MappingTorus, finite_torus_quotient, verify_torus_bijection
from .zeta import moebius, reidemeister_sequence, verify_congruences, zeta_coefficients

__version__ = "0.1.0"
