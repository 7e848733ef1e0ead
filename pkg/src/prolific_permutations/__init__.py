"""Certifies, constructs, enumerates and renders k-prolific permutations and their diamond packings."""

from importlib_metadata import PackageNotFoundError as _PackageNotFoundError
from importlib_metadata import version as _version

from prolific_permutations._constructions import (
    extend,
    extension_position,
    grid_points,
    minprol_size,
    sigma_k,
    sigma_k_grid,
)
from prolific_permutations._enumeration import (
    count_prolific_oracle,
    density_reference,
    enumerate_prolific,
    estimate_density,
    search_minprol,
    symmetry_classes,
    tauraso_reference,
)
from prolific_permutations._errors import (
    BudgetExceededError,
    DegenerateBoxError,
    DeletesEverythingError,
    ExtensionParityError,
    IndexOutOfRangeError,
    InputError,
    InvalidPairError,
    InvalidWitnessError,
    InvariantViolationError,
    KOutOfRangeError,
    MalformedInputError,
    NotAPermutationError,
    NotDisjointError,
    ProlificError,
    SizeOneError,
    TooLargeError,
    TooSmallError,
)
from prolific_permutations._packing import (
    area_inequality_holds,
    bound_threshold,
    clip_to_box,
    density,
    diamond,
    is_valid_packing,
    lower_bound,
    lower_bound_inequality_check,
    overflow_allowance,
    polygon_area,
    proof_box,
    proof_box_ledger,
    tile_outline,
    tile_polygons,
    to_packing,
)
from prolific_permutations._permutation import (
    Symmetry,
    apply_symmetry,
    breadth,
    closest_pair,
    contains,
    count_cuts,
    delete,
    distance,
    find_occurrence,
    identity,
    index_set,
    parse,
    plot,
    span,
    symmetries,
    symmetry,
)
from prolific_permutations._prolific import (
    breadth_after_deletion_check,
    build_chain_graph,
    distinct_pattern_count,
    find_disjoint_witness,
    find_witness,
    is_k_prolific,
    is_k_prolific_oracle,
    max_prolific_index,
    validate_chain_graph,
)
from prolific_permutations._render import render_svg
from prolific_permutations._schemas import (
    Box,
    Chain,
    ChainGraph,
    ChainGraphReport,
    ChainVertex,
    Color,
    CutCount,
    DeletionWitness,
    DensityEstimate,
    DensityResult,
    DiamondPacking,
    EnumerationReport,
    ExtensionSide,
    GridSpec,
    HorizontalOrientation,
    Method,
    Monotonicity,
    PackingValidity,
    Permutation,
    ProlificVerdict,
    ProofBoxLedger,
    RenderOptions,
    SearchBudget,
    VerticalOrientation,
)

__module_name__ = "prolific_permutations"

try:  # pragma: no cover
    __version__ = _version(__module_name__)
except _PackageNotFoundError as error:  # pragma: no cover
    raise ModuleNotFoundError(
        f"Unable to determine version of package '{__module_name__}'. "
        "If you are on a local development system, use 'pip install -e .[dev]' in order to install the package. "
        "If you are on a productive system, this shouldn't happen. Please report a bug."
    ) from error

__all__ = [
    "Box",
    "BudgetExceededError",
    "Chain",
    "ChainGraph",
    "ChainGraphReport",
    "ChainVertex",
    "Color",
    "CutCount",
    "DegenerateBoxError",
    "DeletesEverythingError",
    "DeletionWitness",
    "DensityEstimate",
    "DensityResult",
    "DiamondPacking",
    "EnumerationReport",
    "ExtensionParityError",
    "ExtensionSide",
    "GridSpec",
    "HorizontalOrientation",
    "IndexOutOfRangeError",
    "InputError",
    "InvalidPairError",
    "InvalidWitnessError",
    "InvariantViolationError",
    "KOutOfRangeError",
    "MalformedInputError",
    "Method",
    "Monotonicity",
    "NotAPermutationError",
    "NotDisjointError",
    "PackingValidity",
    "Permutation",
    "ProlificError",
    "ProlificVerdict",
    "ProofBoxLedger",
    "RenderOptions",
    "SearchBudget",
    "SizeOneError",
    "Symmetry",
    "TooLargeError",
    "TooSmallError",
    "VerticalOrientation",
    "apply_symmetry",
    "area_inequality_holds",
    "bound_threshold",
    "breadth",
    "breadth_after_deletion_check",
    "build_chain_graph",
    "clip_to_box",
    "closest_pair",
    "contains",
    "count_cuts",
    "count_prolific_oracle",
    "delete",
    "density",
    "density_reference",
    "diamond",
    "distance",
    "distinct_pattern_count",
    "enumerate_prolific",
    "estimate_density",
    "extend",
    "extension_position",
    "find_disjoint_witness",
    "find_occurrence",
    "find_witness",
    "grid_points",
    "identity",
    "index_set",
    "is_k_prolific",
    "is_k_prolific_oracle",
    "is_valid_packing",
    "lower_bound",
    "lower_bound_inequality_check",
    "max_prolific_index",
    "minprol_size",
    "overflow_allowance",
    "parse",
    "plot",
    "polygon_area",
    "proof_box",
    "proof_box_ledger",
    "render_svg",
    "search_minprol",
    "sigma_k",
    "sigma_k_grid",
    "span",
    "symmetries",
    "symmetry",
    "symmetry_classes",
    "tauraso_reference",
    "tile_outline",
    "tile_polygons",
    "to_packing",
    "validate_chain_graph",
]
