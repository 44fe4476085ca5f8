"""Placement delivery arrays and coded caching for shared-cache networks."""

from pdacache.analysis import (
    Comparison,
    LoadReport,
    compare,
    load_from_gpda,
    load_shortcut,
    pue_baseline,
    uniform_load,
)
from pdacache.constructions import (
    MnParameters,
    TableOneEntry,
    brute_force_search,
    build_mn_pda,
    paper_exemplar,
    table_one_parameters,
)
from pdacache.gpda import (
    AssociationProfile,
    GeneralizedPdaArray,
    Label,
    UserAssignment,
    expand,
    load_gpda,
    read_gpda,
    recover_association,
    save_gpda,
    validate_gpda,
    write_gpda,
)
from pdacache.kernels import BACKEND
from pdacache.pda import (
    STAR,
    PdaArray,
    PdaStats,
    ValidationResult,
    Violation,
    load_pda,
    pda_stats,
    read_pda,
    save_pda,
    validate_pda,
    write_pda,
)
from pdacache.scheme import (
    DemandVector,
    FileLibrary,
    PlacementMap,
    Transmission,
    TransmissionPlan,
    build_placement,
    build_transmission_plan,
    decode,
    encode,
    simulate,
)

__version__ = "0.1.0"
