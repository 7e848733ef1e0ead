"""The ``prolific`` command line interface."""

import json
import logging
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, NoReturn, Optional, Union

import click
from pydantic import BaseModel, ValidationError
from typer import Argument, BadParameter, Option, Typer, echo
from typing_extensions import Annotated

from prolific_permutations._constructions import extend, minprol_size, sigma_k, sigma_k_grid
from prolific_permutations._enumeration import enumerate_prolific, estimate_density, search_minprol, symmetry_classes
from prolific_permutations._errors import BudgetExceededError, InputError, InvariantViolationError, MalformedInputError
from prolific_permutations._packing import density, to_packing
from prolific_permutations._permutation import breadth, delete, parse
from prolific_permutations._prolific import (
    build_chain_graph,
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
    CliConfig,
    DeletionWitness,
    OutputMode,
    Permutation,
    RenderOptions,
    SearchBudget,
)

_logger = logging.getLogger("prolific_permutations")
_logger.setLevel(logging.INFO)
_console_handler = logging.StreamHandler()
_console_handler.formatter = logging.Formatter("[%(name)-20s][%(levelname)-8s] %(message)s")
_logger.addHandler(_console_handler)

_SEPARATOR = re.compile(r"[\s,]+")

app = Typer(add_completion=False)

PermutationArgument = Annotated[
    str, Argument(help="A permutation in one-line notation, e.g. '2 4 1 3', or '@path' to read it from a file.")
]
JsonFlag = Annotated[bool, Option("--json", help="Print one JSON document instead of text.")]
ThreadsOption = Annotated[
    int, Option(envvar="PROLIFIC_THREADS", help="The number of worker processes. Defaults to 'PROLIFIC_THREADS' or 1.")
]
MaxNodesOption = Annotated[
    int, Option(envvar="PROLIFIC_MAX_NODES", help="The search node budget. Defaults to 'PROLIFIC_MAX_NODES' or 10^8.")
]
TimeLimitOption = Annotated[
    float,
    Option(envvar="PROLIFIC_TIME_LIMIT", help="The time limit in seconds. Defaults to 'PROLIFIC_TIME_LIMIT' or 60."),
]


def _read_permutation(text: str) -> Permutation:
    if not text.startswith("@"):
        return parse(text)
    path = Path(text[1:])
    try:
        return parse(path.read_text(encoding="utf-8"))
    except OSError as error:
        raise MalformedInputError(f"Cannot read a permutation from '{path}'.") from error


def _parse_indices(text: str) -> List[int]:
    tokens = [token for token in _SEPARATOR.split(text.strip()) if token]
    try:
        return [int(token) for token in tokens]
    except ValueError as error:
        raise MalformedInputError(f"The index list '{text}' contains a token that is not an integer.") from error


def _parse_box(text: str) -> Box:
    tokens = [token for token in _SEPARATOR.split(text.strip()) if token]
    if len(tokens) != 4:
        raise MalformedInputError(f"A box needs four corners coordinates x0,y0,x1,y1, got '{text}'.")
    try:
        x_min, y_min, x_max, y_max = (Fraction(token) for token in tokens)
    except ValueError as error:
        raise MalformedInputError(f"The box '{text}' contains a coordinate that is not a rational number.") from error
    return Box(x_min=x_min, y_min=y_min, x_max=x_max, y_max=y_max)


def _chain_witness(permutation: Permutation, red: str, blue: str) -> DeletionWitness:
    red_indices, blue_indices = _parse_indices(red), _parse_indices(blue)
    return DeletionWitness(a=tuple(red_indices), b=tuple(blue_indices), common_pattern=delete(permutation, red_indices))


def _output_mode(json_output: bool) -> OutputMode:
    return OutputMode.JSON if json_output else OutputMode.TEXT


def _echo_json(document: Union[BaseModel, Dict[str, Any]]) -> None:
    if isinstance(document, BaseModel):
        document = document.model_dump(mode="json")
    echo(json.dumps(document, indent=2, ensure_ascii=False))


@app.command("check")
def _check(
    permutation: PermutationArgument,
    k: Annotated[
        Optional[int], Option(help="The number of deleted entries. Without it, breadth and largest k are printed.")
    ] = None,
    oracle: Annotated[bool, Option(help="Collect the patterns of all k-subset deletions instead.")] = False,
    json_output: JsonFlag = False,
    threads: ThreadsOption = 1,
) -> None:
    config = CliConfig(
        command="check",
        permutation=_read_permutation(permutation),
        k=k,
        output=_output_mode(json_output),
        threads=threads,
    )
    assert config.permutation is not None

    if config.k is None:
        value, largest = breadth(config.permutation), max_prolific_index(config.permutation)
        if config.output == OutputMode.JSON:
            _echo_json({"permutation": list(config.permutation.values), "breadth": value, "max_k": largest})
        else:
            echo(f"breadth {value}, max k = {largest}")
        return

    if oracle:
        verdict = is_k_prolific_oracle(config.permutation, config.k, threads=config.threads)
    else:
        verdict = is_k_prolific(config.permutation, config.k)
    if config.output == OutputMode.JSON:
        _echo_json(verdict)
    else:
        echo(verdict.describe())


@app.command("construct")
def _construct(
    k: Annotated[int, Option(help="The prolificity index of the minimal permutation σ_k.")],
    extra: Annotated[Optional[int], Option(help="The number of front insertions applied to σ_k.")] = None,
    grid: Annotated[bool, Option(help="Also print the two lattice grids whose union is the plot of σ_k.")] = False,
    json_output: JsonFlag = False,
) -> None:
    config = CliConfig(command="construct", k=k, extra=extra, output=_output_mode(json_output))
    assert config.k is not None

    permutation = sigma_k(config.k)
    if config.extra:
        permutation = extend(permutation, config.k, config.extra)
    grid_spec = sigma_k_grid(config.k) if grid else None

    if config.output == OutputMode.JSON:
        _echo_json(
            {
                "k": config.k,
                "extra": config.extra or 0,
                "permutation": list(permutation.values),
                "grid": grid_spec.model_dump(mode="json") if grid_spec is not None else None,
            }
        )
        return
    echo(str(permutation))
    if grid_spec is not None:
        for line in grid_spec.describe():
            echo(line)


@app.command("extend")
def _extend(
    permutation: PermutationArgument,
    k: Annotated[int, Option(help="The prolificity index that decides the insertion position.")],
    j: Annotated[int, Option(help="The number of front insertions.")],
    json_output: JsonFlag = False,
) -> None:
    config = CliConfig(
        command="extend", permutation=_read_permutation(permutation), k=k, extra=j, output=_output_mode(json_output)
    )
    assert config.permutation is not None and config.k is not None and config.extra is not None

    grown = extend(config.permutation, config.k, config.extra)
    if config.output == OutputMode.JSON:
        _echo_json(grown)
    else:
        echo(str(grown))


@app.command("enumerate")
def _enumerate(  # pylint: disable=too-many-arguments # One parameter per CLI option
    n: Annotated[int, Option(help="The size of the permutations.")],
    k: Annotated[int, Option(help="The number of deleted entries.")],
    list_: Annotated[bool, Option("--list", help="List the permutations.")] = False,
    classes: Annotated[bool, Option(help="Group the permutations into symmetry classes.")] = False,
    avoid: Annotated[
        Optional[List[str]], Option(help="A pattern the permutations must avoid. Can be provided multiple times.")
    ] = None,
    json_output: JsonFlag = False,
    threads: ThreadsOption = 1,
    max_nodes: MaxNodesOption = 10**8,
    time_limit: TimeLimitOption = 60.0,
) -> None:
    config = CliConfig(
        command="enumerate",
        n=n,
        k=k,
        list=list_,
        output=_output_mode(json_output),
        threads=threads,
        budget=SearchBudget(max_nodes=max_nodes, time_limit=time_limit),
    )
    assert config.n is not None and config.k is not None

    report = enumerate_prolific(
        config.n,
        config.k,
        list_permutations=config.list or classes,
        avoiding=[_read_permutation(pattern) for pattern in avoid or []],
        budget=config.budget,
        threads=config.threads,
    )
    orbits = symmetry_classes(report.examples or []) if classes else []

    if config.output == OutputMode.JSON:
        document = report.model_dump(mode="json", exclude={"elapsed"})
        if not config.list:
            document["examples"] = None
        if classes:
            document["classes"] = [[list(member.values) for member in orbit] for orbit in orbits]
        _echo_json(document)
        return

    echo(report.summary_line())
    if config.list:
        for permutation in report.examples or []:
            echo(str(permutation))
    if classes:
        echo(f"{len(orbits)} symmetry classes")
        for orbit in orbits:
            echo(" | ".join(str(member) for member in orbit))


@app.command("minprol")
def _minprol(
    k: Annotated[int, Option(help="The number of deleted entries.")],
    max_: Annotated[Optional[int], Option("--max", help="The largest size to try. Defaults to m(k) + 2.")] = None,
    json_output: JsonFlag = False,
    threads: ThreadsOption = 1,
    max_nodes: MaxNodesOption = 10**8,
    time_limit: TimeLimitOption = 60.0,
) -> None:
    config = CliConfig(
        command="minprol",
        k=k,
        max=max_,
        output=_output_mode(json_output),
        threads=threads,
        budget=SearchBudget(max_nodes=max_nodes, time_limit=time_limit),
    )
    assert config.k is not None

    size = search_minprol(config.k, n_max=config.max, budget=config.budget, threads=config.threads)
    if config.output == OutputMode.JSON:
        _echo_json({"k": config.k, "minprol": size, "max": config.max})
    elif size is None:
        largest = config.max if config.max is not None else minprol_size(config.k) + 2
        echo(f"not found (n <= {largest})")
    else:
        echo(str(size))


@app.command("witness")
def _witness(
    permutation: PermutationArgument,
    k: Annotated[int, Option(help="The number of deleted entries.")],
    disjoint: Annotated[bool, Option(help="Search for two disjoint index sets.")] = False,
    json_output: JsonFlag = False,
) -> None:
    config = CliConfig(
        command="witness", permutation=_read_permutation(permutation), k=k, output=_output_mode(json_output)
    )
    assert config.permutation is not None and config.k is not None

    if disjoint:
        witness = find_disjoint_witness(config.permutation, config.k)
    else:
        witness = find_witness(config.permutation, config.k)

    if config.output == OutputMode.JSON:
        _echo_json({"witness": witness.model_dump(mode="json") if witness is not None else None})
    elif witness is None:
        echo(f"no {'disjoint ' if disjoint else ''}witness: '{config.permutation}' is {config.k}-prolific")
    else:
        echo(f"A = {list(witness.a)}")
        echo(f"B = {list(witness.b)}")
        echo(f"pattern: {witness.common_pattern}")


@app.command("render")
def _render(  # pylint: disable=too-many-arguments # One parameter per CLI option
    permutation: PermutationArgument,
    k: Annotated[Optional[int], Option(help="Draw the packing of diamonds of semidiagonal k/2 + 1.")] = None,
    extended: Annotated[bool, Option(help="Use extended diamonds. Needs an odd k.")] = False,
    chain_witness: Annotated[bool, Option(help="Draw the chain graph of the first disjoint witness.")] = False,
    red: Annotated[Optional[str], Option(help="The red indices of a chain graph, e.g. '1,4,7'.")] = None,
    blue: Annotated[Optional[str], Option(help="The blue indices of a chain graph.")] = None,
    scale: Annotated[float, Option(help="Pixels per lattice step.")] = 20.0,
    proof_box: Annotated[bool, Option(help="Outline the box of the area bound around a packing.")] = False,
    output: Annotated[Optional[Path], Option("--output", "-o", help="The SVG file. Defaults to stdout.")] = None,
) -> None:
    config = CliConfig(command="render", permutation=_read_permutation(permutation), k=k, output_path=output)
    assert config.permutation is not None
    options = RenderOptions(scale=scale, show_proof_box=proof_box)

    if (red is None) != (blue is None):
        raise BadParameter("--red and --blue must be given together.")
    if red is not None and blue is not None:
        svg = render_svg(build_chain_graph(config.permutation, _chain_witness(config.permutation, red, blue)), options)
    elif chain_witness:
        if config.k is None:
            raise BadParameter("--chain-witness needs --k.")
        witness = find_disjoint_witness(config.permutation, config.k)
        if witness is None:
            raise InputError(f"'{config.permutation}' has no disjoint witness for k = {config.k}.")
        svg = render_svg(build_chain_graph(config.permutation, witness), options)
    elif config.k is not None:
        svg = render_svg(to_packing(config.permutation, config.k, extended=extended), options)
    elif extended:
        raise BadParameter("--extended needs --k.")
    else:
        svg = render_svg(config.permutation, options)

    if config.output_path is None:
        echo(svg, nl=False)
        return
    config.output_path.write_text(svg, encoding="utf-8")
    _logger.info(f"Wrote '{config.output_path}'.")


@app.command("density")
def _density(  # pylint: disable=too-many-arguments # One parameter per CLI option
    k: Annotated[int, Option(help="The number of deleted entries.")],
    permutation: Annotated[
        Optional[str], Argument(help="Compute the exact density of the diamond packing of this permutation.")
    ] = None,
    n: Annotated[Optional[int], Option(help="The size of the sampled permutations.")] = None,
    samples: Annotated[Optional[int], Option(help="The number of random permutations.")] = None,
    seed: Annotated[Optional[int], Option(help="The seed of the random permutations.")] = None,
    box: Annotated[
        Optional[str], Option("--box", help="The domain 'x0,y0,x1,y1' of the exact density. Defaults to [1, n]².")
    ] = None,
    extended: Annotated[bool, Option(help="Use extended diamonds. Needs an odd k.")] = False,
    json_output: JsonFlag = False,
    threads: ThreadsOption = 1,
) -> None:
    config = CliConfig(
        command="density",
        permutation=_read_permutation(permutation) if permutation is not None else None,
        k=k,
        n=n,
        samples=samples,
        seed=seed,
        output=_output_mode(json_output),
        threads=threads,
    )
    assert config.k is not None

    if config.permutation is not None:
        size = config.permutation.n
        domain = _parse_box(box) if box is not None else Box(x_min=1, y_min=1, x_max=size, y_max=size)
        result = density(to_packing(config.permutation, config.k, extended=extended), domain)
        if config.output == OutputMode.JSON:
            _echo_json(result)
        else:
            echo(
                f"density {result.density} ≈ {float(result.density):.6f} "
                f"(covered {result.covered_area} of {result.domain_area})"
            )
        return

    if config.n is None or config.samples is None or config.seed is None:
        raise BadParameter("Sampling the density needs --n, --samples and --seed, or a permutation argument.")
    estimate = estimate_density(config.n, config.k, config.samples, config.seed, threads=config.threads)
    if config.output == OutputMode.JSON:
        _echo_json(estimate)
    else:
        echo(
            f"n = {estimate.n}, k = {estimate.k}: {estimate.hits} of {estimate.samples} samples prolific, "
            f"proportion {float(estimate.proportion):.6f} ± {estimate.std_error:.6f} "
            f"(reference {estimate.reference:.6f})"
        )


@app.command("validate-chain")
def _validate_chain(
    permutation: PermutationArgument,
    red: Annotated[str, Option(help="The red indices, e.g. '1,4,7'.")],
    blue: Annotated[str, Option(help="The blue indices, disjoint from the red ones.")],
    json_output: JsonFlag = False,
) -> None:
    config = CliConfig(
        command="validate-chain", permutation=_read_permutation(permutation), output=_output_mode(json_output)
    )
    assert config.permutation is not None

    graph = build_chain_graph(config.permutation, _chain_witness(config.permutation, red, blue))
    report = validate_chain_graph(graph)
    if config.output == OutputMode.JSON:
        _echo_json(report)
    else:
        report.print()
    if not report.passed:
        failed = [name for name, passed in report.checks.items() if not passed]
        raise InvariantViolationError(f"The chain graph of '{config.permutation}' fails the checks {failed}.")


def _exit_with(code: int, message: str) -> NoReturn:
    _logger.error(message)
    sys.exit(code)


def main() -> None:
    """Runs the CLI and maps errors to exit codes.

    Input errors exit with 1, exceeded budgets with 2 and violated invariants with 3.
    """
    try:
        result = app(standalone_mode=False)
    except click.ClickException as error:
        _exit_with(1, error.format_message())
    except click.Abort:
        _exit_with(1, "Aborted!")
    except (ValidationError, InputError) as error:
        _exit_with(1, str(error))
    except BudgetExceededError as error:
        _exit_with(2, str(error))
    except InvariantViolationError as error:
        _exit_with(3, str(error))
    sys.exit(result if isinstance(result, int) else 0)


if __name__ == "__main__":  # pragma: no cover
    main()
