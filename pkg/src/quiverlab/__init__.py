"""Quiver mutation toolkit.

Core objects: skew-symmetric exchange matrices, ice quivers, framed quivers
with green/red vertex dynamics.  On top of those: green-sequence verification
and search, mutation-class enumeration, machine-checkable obstruction and
local-acyclicity certificates, and exact Laurent-polynomial seed mutation
with principal coefficients.
"""

from .canonical import CanonicalForm, canonical_form
from .classes import (
    FoundAcyclic,
    ImpossibleByColoring,
    MutationClass,
    NotWithinCap,
    class_contains_acyclic,
    column_gcds,
    enumerate_class,
    is_mutation_finite,
)
from .core import (
    ExchangeMatrix,
    IceQuiver,
    ResourceLimitError,
    SignCoherenceViolation,
    VertexStatus,
    frame,
    freeze,
    induced_subquiver,
    is_acyclic,
    mutate,
    statuses,
    vertex_status,
)
from .laurent import LaurentPoly, LaurentViolation, NegativeCoefficientError
from .obstructions import (
    AcyclicLeaf,
    ClassLevelNoMgs,
    Coloring,
    CoverSplit,
    CycleWitness,
    Diagram,
    LocalAcyclicityCertificate,
    MultipleArrowCycle,
    Unknown,
    Unsatisfiable,
    admissible_coloring,
    certificate_document,
    class_no_mgs_certificate,
    covering_pairs,
    local_acyclicity_certificate,
    multiple_arrow_cycle,
    no_mgs_certificate,
)
from .certcheck import check_certificate
from .seeds import (
    Seed,
    cluster_variable,
    degree,
    depth1_upper_membership,
    exchange_binomial,
    grading_check,
    initial_seed,
    is_coprime_matrix,
    seed_mutate,
    totally_coprime,
)
from .sequences import (
    ExhaustedToDepth,
    Found,
    Obstructed,
    ReplayTrace,
    replay,
    search_g2r,
    search_mgs,
    verify_green,
    verify_green_to_red,
    verify_maximal_green,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
