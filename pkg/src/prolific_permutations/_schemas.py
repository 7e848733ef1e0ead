"""Contains Pydantic models for permutations, certificates, reports and configuration."""

from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, PlainSerializer, field_validator, model_validator
from rich import box
from rich.console import Console
from rich.table import Table
from rich.text import Text
from typing_extensions import Annotated

from prolific_permutations._errors import NotAPermutationError

Rational = Annotated[Fraction, PlainSerializer(str, return_type=str, when_used="json")]
Point = Tuple[int, int]


def _bijection_problem(values: Tuple[int, ...]) -> Optional[str]:
    if len(values) == 0:
        return "A permutation needs at least one entry."
    if sorted(values) != list(range(1, len(values) + 1)):
        return f"The values {list(values)} are not a bijection on [1, {len(values)}]."
    return None


class Permutation(BaseModel):
    """A permutation in one-line notation with 1-based positions and values.

    >>> Permutation.of([2, 4, 1, 3])(2)
    4
    >>> str(Permutation.of([2, 4, 1, 3]))
    '2 4 1 3'
    """

    model_config = ConfigDict(frozen=True)

    values: Tuple[int, ...]

    @field_validator("values")
    @classmethod
    def _check_bijection(cls, values: Tuple[int, ...]) -> Tuple[int, ...]:
        problem = _bijection_problem(values)
        if problem is not None:
            raise ValueError(problem)
        return values

    @classmethod
    def of(cls, values: Sequence[int]) -> "Permutation":
        """Creates a permutation from its one-line notation.

        Args:
            values: The values σ(1), ..., σ(n).

        Returns:
            Permutation: The permutation.

        Raises:
            NotAPermutationError: If the values are not a bijection on [n].
        """
        word = tuple(values)
        problem = _bijection_problem(word)
        if problem is not None:
            raise NotAPermutationError(problem)
        return cls.model_construct(values=word)

    @property
    def n(self) -> int:
        """The size of the permutation."""
        return len(self.values)

    def __call__(self, position: int) -> int:
        return self.values[position - 1]

    def __len__(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return " ".join(str(value) for value in self.values)

    def points(self) -> List[Point]:
        """Returns the plot of the permutation, ordered from left to right."""
        return [(position, value) for position, value in enumerate(self.values, start=1)]


class CutCount(BaseModel):
    """Counts the points in the span of a pair by the side from which they cut it."""

    model_config = ConfigDict(frozen=True)

    left: int
    right: int
    below: int
    above: int
    central: int

    @property
    def horizontal(self) -> int:
        """Cuts from the left or right, central span points included."""
        return self.left + self.right + self.central

    @property
    def vertical(self) -> int:
        """Cuts from below or above, central span points included."""
        return self.below + self.above + self.central

    @property
    def total(self) -> int:
        """All cuts. Equals the distance of the pair minus two."""
        return self.horizontal + self.vertical


class Method(Enum):
    """How a prolificity verdict was reached."""

    BREADTH = "breadth"
    ORACLE = "oracle"


class ProlificVerdict(BaseModel):
    """The answer to the question whether a permutation is k-prolific."""

    k: int
    is_prolific: bool
    method: Method
    breadth: Optional[int] = None
    max_prolific_index: Optional[int] = None
    closest_pair: Optional[Point] = None
    distinct_patterns: Optional[int] = None
    subset_count: Optional[int] = None

    def describe(self) -> str:
        """Returns the one-line human-readable form of the verdict."""
        answer = "yes" if self.is_prolific else "no"
        if self.method == Method.BREADTH:
            return f"{self.k}-prolific: {answer} (breadth {self.breadth}, max k = {self.max_prolific_index})"
        distinct = f"{self.distinct_patterns} of {self.subset_count} deletion patterns distinct"
        return f"{self.k}-prolific: {answer} ({distinct})"


class DeletionWitness(BaseModel):
    """Two distinct index k-sets whose deletions yield the same pattern."""

    model_config = ConfigDict(frozen=True)

    a: Tuple[int, ...]
    b: Tuple[int, ...]
    common_pattern: Permutation

    @model_validator(mode="after")
    def _check_sets(self) -> "DeletionWitness":
        if len(self.a) != len(self.b):
            raise ValueError(f"The index sets {list(self.a)} and {list(self.b)} differ in size.")
        if set(self.a) == set(self.b):
            raise ValueError(f"The index sets of a witness must differ, got {list(self.a)} twice.")
        return self

    @property
    def k(self) -> int:
        """The number of deleted entries."""
        return len(self.a)

    @property
    def is_disjoint(self) -> bool:
        """Whether the two index sets share no index."""
        return not set(self.a) & set(self.b)


class Color(Enum):
    """The colour of a chain graph vertex."""

    RED = "red"
    BLUE = "blue"
    UNCOLORED = "uncolored"


class Monotonicity(Enum):
    """Whether a chain rises or falls from left to right."""

    INCREASING = "increasing"
    DECREASING = "decreasing"


class HorizontalOrientation(Enum):
    """Where the blue end of a chain lies relative to its red end."""

    LEFTWARDS = "leftwards"
    RIGHTWARDS = "rightwards"


class VerticalOrientation(Enum):
    """Whether the blue end of a chain lies above or below its red end."""

    UPWARDS = "upwards"
    DOWNWARDS = "downwards"


class ChainVertex(BaseModel):
    """A point of a permutation plot with its chain graph colour."""

    position: int
    value: int
    color: Color


class Chain(BaseModel):
    """A path of a chain graph.

    ``path`` lists positions in walking order, starting at the red end-vertex when there is one.
    Orientation and monotonicity are ``None`` when the path is malformed.
    """

    path: Tuple[int, ...]
    red_end: Optional[int] = None
    blue_end: Optional[int] = None
    monotonicity: Optional[Monotonicity] = None
    horizontal: Optional[HorizontalOrientation] = None
    vertical: Optional[VerticalOrientation] = None

    @property
    def positions(self) -> Tuple[int, ...]:
        """The positions of the chain from left to right."""
        return tuple(sorted(self.path))

    @property
    def edges(self) -> List[Point]:
        """The edges of the chain as position pairs, each ordered from left to right."""
        return [(min(p, q), max(p, q)) for p, q in zip(self.path, self.path[1:])]


class ChainGraph(BaseModel):
    """The chain graph of a permutation for a witness with disjoint index sets."""

    permutation: Permutation
    k: int
    vertices: List[ChainVertex]
    edges: List[Point]
    chains: List[Chain]
    fixed_points: List[int]
    discrepancy: List[int]

    def color_of(self, position: int) -> Color:
        """Returns the colour of the vertex at a position."""
        return self.vertices[position - 1].color


class ChainGraphReport(BaseModel):
    """The outcome of checking a chain graph against the structure laws of chains."""

    chain_count: int
    increasing_count: int
    decreasing_count: int
    fixed_point_count: int
    leftwards_count: int
    rightwards_count: int
    upwards_count: int
    downwards_count: int
    checks: Dict[str, bool]
    failures: Dict[str, List[str]] = {}

    @property
    def passed(self) -> bool:
        """Whether every check passed."""
        return all(self.checks.values())

    def print(self) -> None:
        """Prints the report."""
        summary = Table(title=_get_chain_report_title(self), box=box.SQUARE)
        summary.add_column("Check")
        summary.add_column("Result")
        summary.add_column("Details")

        for name, passed in self.checks.items():
            details = "\n".join(self.failures.get(name, []))
            summary.add_row(name, Text("pass", "green") if passed else Text("FAIL", "red"), details)

        Console().print(summary)


def _get_chain_report_title(report: ChainGraphReport) -> str:
    return (
        f"Chains: {report.chain_count}   "
        f"Increasing: {report.increasing_count}   "
        f"Decreasing: {report.decreasing_count}   "
        f"Fixed points: {report.fixed_point_count}"
    )


class GridSpec(BaseModel):
    """Two interlocking lattice grids whose union is the plot of σ_k.

    Grid ``j`` consists of the points ``p_j + q*u + r*v`` with ``0 <= q <= gamma{j}_q_max`` and
    ``0 <= r <= gamma{j}_r_max``.
    """

    model_config = ConfigDict(frozen=True)

    k: int
    p1: Point
    p2: Point
    u: Point
    v: Point
    gamma1_q_max: int
    gamma1_r_max: int
    gamma2_q_max: int
    gamma2_r_max: int

    def describe(self) -> List[str]:
        """Returns the vectors and ranges as printable lines."""
        return [
            f"p1 = {self.p1}",
            f"p2 = {self.p2}",
            f"u = {self.u}",
            f"v = {self.v}",
            f"grid 1: 0 <= q <= {self.gamma1_q_max}, 0 <= r <= {self.gamma1_r_max}",
            f"grid 2: 0 <= q <= {self.gamma2_q_max}, 0 <= r <= {self.gamma2_r_max}",
        ]


class SearchBudget(BaseModel):
    """Node-count and wall-clock guards of a search."""

    model_config = ConfigDict(frozen=True)

    max_nodes: int = Field(default=10**8, gt=0)
    time_limit: float = Field(default=60.0, gt=0)


class EnumerationReport(BaseModel):
    """Counts and optionally lists the k-prolific permutations of size n."""

    n: int
    k: int
    count: int = Field(ge=0)
    examples: Optional[List[Permutation]] = None
    avoided: List[Permutation] = []
    nodes_visited: int
    elapsed: float

    @model_validator(mode="after")
    def _check_listing(self) -> "EnumerationReport":
        if self.examples is not None and len(self.examples) != self.count:
            raise ValueError(f"Listed {len(self.examples)} permutations, but counted {self.count}.")
        return self

    def summary_line(self) -> str:
        """Returns the count as a printable line."""
        restriction = ""
        if self.avoided:
            restriction = " avoiding " + ", ".join(f"'{pattern}'" for pattern in self.avoided)
        return f"n = {self.n}, k = {self.k}{restriction}: {self.count} prolific permutations"


class DensityEstimate(BaseModel):
    """A Monte-Carlo estimate of the proportion of k-prolific permutations of size n."""

    n: int
    k: int
    samples: int = Field(gt=0)
    hits: int = Field(ge=0)
    proportion: Rational
    std_error: float
    reference: float
    seed: int

    @model_validator(mode="after")
    def _check_proportion(self) -> "DensityEstimate":
        if self.proportion != Fraction(self.hits, self.samples):
            raise ValueError(f"The proportion {self.proportion} is not {self.hits}/{self.samples}.")
        return self

    @property
    def deviation(self) -> float:
        """The distance of the estimate from the reference in standard errors."""
        if self.std_error == 0:
            return 0.0 if float(self.proportion) == self.reference else float("inf")
        return abs(float(self.proportion) - self.reference) / self.std_error


class ExtensionSide(Enum):
    """Where the extension of an odd-k diamond sits relative to its rightmost corner."""

    ABOVE = "above"
    BELOW = "below"


class DiamondPacking(BaseModel):
    """Diamonds of semidiagonal k/2 + 1 centred on the plot of a permutation."""

    model_config = ConfigDict(frozen=True)

    k: int
    centers: List[Point]
    semidiagonal: Rational
    extended: bool = False
    extensions: List[Optional[ExtensionSide]] = []

    @property
    def n(self) -> int:
        """The number of tiles."""
        return len(self.centers)

    @property
    def tile_area(self) -> Fraction:
        """The area of one tile, extension included."""
        area = 2 * self.semidiagonal**2
        return area + Fraction(1, 2) if self.extended else area


class PackingValidity(BaseModel):
    """Whether the tiles of a packing have pairwise disjoint interiors, with the offending pairs."""

    valid: bool
    overlaps: List[Point] = []
    extension_overlaps: List[Point] = []
    blocked_extensions: List[int] = []


class Box(BaseModel):
    """An axis-aligned box with rational corners."""

    model_config = ConfigDict(frozen=True)

    x_min: Rational
    y_min: Rational
    x_max: Rational
    y_max: Rational

    @property
    def area(self) -> Fraction:
        """The area of the box."""
        return (self.x_max - self.x_min) * (self.y_max - self.y_min)


class DensityResult(BaseModel):
    """The exact density of a packing relative to a box."""

    box: Box
    covered_area: Rational
    domain_area: Rational
    density: Rational


class ProofBoxLedger(BaseModel):
    """Area bookkeeping of a packing against the square box [s-1, n+2-s]^2.

    ``holds`` states that the tile area inside the box does not exceed the box area and that the
    overflow into the margins does not exceed its allowance.
    """

    k: int
    n: int
    extended: bool
    box: Box
    total_tile_area: Rational
    inside_area: Rational
    overflow_area: Rational
    overflow_allowance: Rational
    holds: bool


class RenderOptions(BaseModel):
    """Styling of rendered SVG documents. Lengths are in lattice units unless stated otherwise."""

    scale: float = Field(default=20.0, gt=0, description="Pixels per lattice step.")
    margin: float = Field(default=1.0, ge=0)
    point_radius: float = Field(default=0.25, gt=0)
    show_grid: bool = True
    show_proof_box: bool = False
    grid_stroke: str = "#d0d0d0"
    point_fill: str = "#000000"
    diamond_fill: str = "#dde6f5"
    diamond_stroke: str = "#4d4d4d"
    red: str = "#d62728"
    blue: str = "#1f77b4"
    edge_stroke: str = "#333333"
    stroke_width: float = Field(default=1.0, gt=0, description="Stroke width in pixels.")


class OutputMode(Enum):
    """How the CLI prints its results."""

    TEXT = "text"
    JSON = "json"


_REQUIRED_FLAGS: Dict[str, Tuple[str, ...]] = {
    "check": ("permutation",),
    "construct": ("k",),
    "extend": ("permutation", "k", "extra"),
    "enumerate": ("n", "k"),
    "minprol": ("k",),
    "witness": ("permutation", "k"),
    "render": ("permutation",),
    "density": ("k",),
    "validate-chain": ("permutation",),
}


class CliConfig(BaseModel):
    """The validated flags of one CLI invocation."""

    command: str
    permutation: Optional[Permutation] = None
    k: Optional[int] = Field(default=None, ge=1)
    n: Optional[int] = Field(default=None, ge=1)
    extra: Optional[int] = Field(default=None, ge=0)
    samples: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = Field(default=None, ge=0)
    max: Optional[int] = Field(default=None, ge=1)
    list: bool = False
    output: OutputMode = OutputMode.TEXT
    output_path: Optional[Path] = None
    threads: int = Field(default=1, ge=1)
    budget: SearchBudget = SearchBudget()

    @model_validator(mode="after")
    def _check_flags(self) -> "CliConfig":
        if self.command not in _REQUIRED_FLAGS:
            raise ValueError(f"Unknown subcommand '{self.command}'.")
        missing = [flag for flag in _REQUIRED_FLAGS[self.command] if getattr(self, flag) is None]
        if missing:
            raise ValueError(f"Subcommand '{self.command}' needs " + ", ".join(f"--{flag}" for flag in missing) + ".")
        size = self.permutation.n if self.permutation is not None else self.n
        if self.k is not None and size is not None and self.command in ("enumerate", "witness") and self.k >= size:
            raise ValueError(f"k = {self.k} must be smaller than the size {size}.")
        return self
