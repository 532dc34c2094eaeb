"""Transfer systems, model structures, and Bousfield localizations on
finite lattices."""
from .arrows import (
    ArrowSet,
    close_composition,
    close_pullback,
    close_pushout,
    close_retracts,
    close_two_out_of_three,
    compose_sets,
    generate_cotransfer,
    generate_transfer,
    is_composition_closed,
    is_cotransfer_system,
    is_transfer_system,
    is_wide_decomposable,
    llp_dual,
    rlp_dual,
)
from .bousfield import (
    GoldenArrowReport,
    LocalizationEdge,
    LocalizationGraph,
    golden_arrow_set,
    golden_arrows,
    is_weakly_connected,
    left_localize,
    localization_graph,
    reachable_from_trivial,
    right_localize,
    smallest_weq_superset,
    weq_components,
)
from .errors import (
    AmbiguousMinimum,
    CycleError,
    DuplicateLabel,
    LatmodError,
    MaximalityViolation,
    NotALattice,
    NotATransferSystem,
    NotAWeakEquivalenceSet,
    NotAdmissible,
    NotShort,
    UnknownLabel,
)
from .lattice import (
    Arrow,
    FiniteLattice,
    build_lattice,
    chain,
    enumerate_short_factorizations,
    find_sublattice_embedding,
    is_modular,
    n5,
    product,
    pullbacks_of,
    pushouts_of,
    short_arrows,
)
from .models import (
    ModelStructure,
    af_interval,
    derive_classes,
    enumerate_model_structures,
    enumerate_weak_equivalence_sets,
    is_weak_equivalence_set,
    k_max,
    t_max,
    t_min,
    verify_model_axioms,
)
from .serialize import (
    builtin_lattice,
    load_arrow_set,
    load_lattice,
    load_model,
    parse_arrow_set,
    parse_lattice,
    parse_model,
    serialize_arrow_set,
    serialize_lattice,
    serialize_model,
)
from .transfers import (
    TransferCatalog,
    cotransfer_systems,
    enumerate_cotransfer_systems,
    enumerate_transfer_systems,
    is_saturated,
    singly_generated_transfers,
    tr_as_lattice,
    tr_join,
    tr_meet,
    transfer_catalog,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousMinimum",
    "Arrow",
    "ArrowSet",
    "CycleError",
    "DuplicateLabel",
    "FiniteLattice",
    "GoldenArrowReport",
    "LatmodError",
    "LocalizationEdge",
    "LocalizationGraph",
    "MaximalityViolation",
    "ModelStructure",
    "NotALattice",
    "NotATransferSystem",
    "NotAWeakEquivalenceSet",
    "NotAdmissible",
    "NotShort",
    "TransferCatalog",
    "UnknownLabel",
    "af_interval",
    "build_lattice",
    "builtin_lattice",
    "chain",
    "close_composition",
    "close_pullback",
    "close_pushout",
    "close_retracts",
    "close_two_out_of_three",
    "compose_sets",
    "cotransfer_systems",
    "derive_classes",
    "enumerate_cotransfer_systems",
    "enumerate_model_structures",
    "enumerate_short_factorizations",
    "enumerate_transfer_systems",
    "enumerate_weak_equivalence_sets",
    "find_sublattice_embedding",
    "generate_cotransfer",
    "generate_transfer",
    "golden_arrow_set",
    "golden_arrows",
    "is_composition_closed",
    "is_cotransfer_system",
    "is_modular",
    "is_saturated",
    "is_transfer_system",
    "is_weakly_connected",
    "is_weak_equivalence_set",
    "is_wide_decomposable",
    "k_max",
    "left_localize",
    "llp_dual",
    "load_arrow_set",
    "load_lattice",
    "load_model",
    "localization_graph",
    "n5",
    "parse_arrow_set",
    "parse_lattice",
    "parse_model",
    "product",
    "pullbacks_of",
    "pushouts_of",
    "reachable_from_trivial",
    "right_localize",
    "rlp_dual",
    "serialize_arrow_set",
    "serialize_lattice",
    "serialize_model",
    "short_arrows",
    "singly_generated_transfers",
    "smallest_weq_superset",
    "t_max",
    "t_min",
    "tr_as_lattice",
    "tr_join",
    "tr_meet",
    "transfer_catalog",
    "verify_model_axioms",
    "weq_components",
]
