"""Constant-composition codes: data model, bounds, designs, recursive
composition, and short-code search."""

from .bounds import (
    BoundResult,
    BoundRule,
    CongruenceProfile,
    bound_johnson_d2w2,
    bound_johnson_d2w3,
    bound_quaternary_w3,
    bound_svanstrom,
    bound_weight45,
    congruence_profile,
    johnson_step,
    pbd_admissible,
    svanstrom_correction,
    universe_size,
    upper_bound,
)
from .catalog import (
    Catalog,
    CatalogEntry,
    CatalogStatus,
    asymptotic_value,
    catalog_lookup,
)
from .codes import (
    Code,
    CodeParams,
    Composition,
    VerifyReport,
    Violation,
    composition_of,
    distance_five_cyclic_code,
    hamming_distance,
    is_refinement,
    min_distance,
    refine_code,
    shorten_code,
    support,
    verify_code,
)
from .compose import (
    closure_check,
    gdd_compose,
    pbd_compose,
    predicted_size,
)
from .designs import (
    BlockCensus,
    GddFeasibility,
    GddType,
    GroupDivisibleDesign,
    SetSystem,
    adjoin_and_fill,
    affine_plane,
    block_census,
    delete_point,
    gdd4_g4m1_admissible,
    gdd5_gu_admissible,
    gdd_type,
    pbd_from_gdd,
    projective_plane,
    transversal_design,
    verify_gdd,
    verify_pbd,
    wfc,
)
from .search import (
    CyclicSearchResult,
    Orbit,
    SearchBudget,
    SearchIncomplete,
    UniverseTooLarge,
    enumerate_words,
    local_search,
    max_code_cyclic,
    max_code_exact,
    orbit_decompose,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
