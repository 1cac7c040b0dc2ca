"""
CLI entry point for seqcube.

Usage:
    seqcube lc --bits 11110000
    seqcube klc --positions 0,1,3,4,7,8 --n 4 --k 2 --json
    seqcube census --n 3 --edges 0 --verify
    seqcube scan --n 4 --filter all_even_weight --csv mismatches.csv

Sequence input takes exactly one of --bits (the length fixes n), --hex with --n
or --positions with --n. Hex character t encodes indices 4t..4t+3, index 4t in
the most significant bit.

Exit codes: 0 success, 2 parse error, 3 invalid input, 4 budget exceeded,
5 internal invariant violation.
"""

import sys
import time

import click

from src import __version__
from src.analyzers.error_complexity import ScanFilter, SearchBudget
from src.analyzers.reports import OutputDocument
from src.config import configure_logging, get_settings
from src.coordinator import AnalysisCoordinator
from src.errors import ParseError, SeqCubeError


def _int_list(text, what):
    tokens = [t.strip() for t in text.split(",") if t.strip()]
    if not tokens:
        raise ParseError(f"Empty {what} list")
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"Bad {what} list {text!r}") from None


def _sequence_input(bits, hex_text, positions, n):
    given = [(fmt, text) for fmt, text in
             (("bits", bits), ("hex", hex_text), ("positions", positions)) if text is not None]
    if len(given) != 1:
        raise ParseError("Give exactly one of --bits, --hex or --positions")
    fmt, text = given[0]
    return {"fmt": fmt, "text": text, "n": n}


def sequence_options(f):
    options = [
        click.option("--bits", help="Period as a 0/1 string, index 0 first."),
        click.option("--hex", "hex_text", help="Period in hex (needs --n)."),
        click.option("--positions", help="Comma-separated support positions (needs --n)."),
        click.option("--n", "n", type=int, help="Period exponent: the period is 2^n."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def output_options(f):
    options = [
        click.option("--json", "as_json", is_flag=True, help="Emit one JSON document."),
        click.option("--budget-patterns", type=int, help="Cap on enumerated patterns."),
        click.option("--budget-weight", type=int, help="Cap on enumerated error weight."),
        click.option(
            "--workers", type=int, envvar="SEQCUBE_WORKERS",
            help="Worker processes (results do not depend on it).",
        ),
        click.option("--timing", is_flag=True, help="Include wall time in JSON output."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def _budget(budget_patterns, budget_weight):
    settings = get_settings()
    return SearchBudget(
        max_patterns=settings.max_patterns if budget_patterns is None else budget_patterns,
        max_weight=settings.max_weight if budget_weight is None else budget_weight,
    )


def _fail(message, exit_code):
    click.echo(f"error: {' '.join(str(message).split())}", err=True)
    sys.exit(exit_code)


def _run(command, request_type, echo, output, csv_path=None, **params):
    """Dispatch one request, print the outcome and exit with its code."""
    try:
        budget = _budget(output["budget_patterns"], output["budget_weight"])
    except SeqCubeError as e:
        _fail(e, e.exit_code)
    coordinator = AnalysisCoordinator(budget, output["workers"])

    started = time.perf_counter()
    results = coordinator.process_request(request_type, **params)
    elapsed_ms = (time.perf_counter() - started) * 1000

    if results["status"] != "success":
        _fail(results["message"], results["exit_code"])

    report = results.get("report")
    if csv_path and report is not None:
        report.to_frame().to_csv(csv_path, index=False)

    if output["as_json"]:
        document = OutputDocument(
            command=command,
            input=echo,
            result=results["result"],
            budget=results.get("budget"),
            timing_ms=round(elapsed_ms, 3) if output["timing"] else None,
        )
        click.echo(document.model_dump_json(indent=2))
    else:
        for line in render_text(command, results["result"]):
            click.echo(line)


def render_text(command, result):
    """Human-readable lines for one command's result payload."""
    if command == "lc":
        return [f"L = {result['linear_complexity']}"]
    if command == "klc":
        lines = [
            f"L_{result['k']} = {result['klc']}",
            "stable" if result["stable"] else "unstable",
        ]
        if result["k_min"] is not None:
            lines.append(f"k_min = {result['k_min']}")
        return lines
    if command == "kmin":
        return [f"L = {result['linear_complexity']}", f"k_min = {result['k_min']}"]
    if command == "spectrum":
        return [",".join(f"({k},{lc})" for k, lc in result["points"])]
    if command == "decompose":
        lines = [
            f"cube edges={c['edges']} anchor={c['anchor']} L={c['linear_complexity']} "
            f"positions={c['positions']}"
            for c in result["cubes"]
        ]
        if result["lone_vertex"] is not None:
            lines.append(f"lone vertex {result['lone_vertex']}")
        if "predicted_critical_ks" in result:
            lines.append(f"predicted critical k: {result['predicted_critical_ks']}")
        return lines or ["zero sequence: no cubes"]
    if command in ("recognize", "construct"):
        cube = result["cube"]
        if cube is None:
            return ["not a cube"]
        lines = [f"cube edges={cube['edges']} L={cube['linear_complexity']}"]
        if "bits" in result:
            lines.append(result["bits"])
        return lines
    if command == "maxklc":
        return [f"max L_{result['k']} = {result['max_klc']}"]
    if command == "census":
        lines = [f"predicted {result['predicted']}"]
        if "observed" in result:
            lines.append(f"observed {result['observed']} of {result['examined']} supports")
        if result.get("note"):
            lines.append(result["note"])
        return lines
    if command == "quad-audit":
        lines = [
            f"cases {result['cases']} agreements {result['agreements']} "
            f"disagreements {result['disagreements']}"
        ]
        lines += [
            f"disagree {w['support']} pairing {w['pairing']} predicted {w['predicted']} "
            f"oracle {w['oracle']}"
            for w in result["witnesses"]
        ]
        return lines
    if command == "scan":
        tallies = " ".join(f"{k}={v}" for k, v in result["tallies"].items())
        lines = [f"examined {result['examined']} {tallies}"]
        if not result["complete"]:
            lines.append("INCOMPLETE: some sequences exceeded the search budget")
        lines += [
            f"mismatch {w['positions']} predicted {w['predicted_ks']} "
            f"oracle {[k for k, _ in w['oracle_spectrum'] if k > 0]}"
            for w in result["mismatches"]
        ]
        return lines
    return [str(result)]


@click.group()
@click.version_option(__version__, prog_name="seqcube")
@click.option("--log-level", default=None, help="Logging level (default SEQCUBE_LOG_LEVEL).")
def cli(log_level):
    """Linear complexity, k-error complexity and cube structure of 2^n-periodic sequences."""
    configure_logging(log_level)


def _sequence_command(name, request_type, help_text):
    @cli.command(name, help=help_text)
    @sequence_options
    @output_options
    def command(bits, hex_text, positions, n, **output):
        try:
            params = _sequence_input(bits, hex_text, positions, n)
        except SeqCubeError as e:
            _fail(e, e.exit_code)
        _run(name, request_type, dict(params), output, **params)

    return command


lc = _sequence_command("lc", "lc", "Linear complexity (Games-Chan, cross-checked).")
kmin = _sequence_command("kmin", "kmin", "Smallest k that lowers the linear complexity.")
spectrum = _sequence_command("spectrum", "spectrum", "Critical points of the k-error spectrum.")
decompose = _sequence_command("decompose", "decompose", "Standard cube decomposition.")
recognize = _sequence_command("recognize", "recognize", "Is the support a single cube?")


@cli.command("klc")
@sequence_options
@click.option("--k", "k", type=int, required=True, help="Error budget.")
@output_options
def klc(bits, hex_text, positions, n, k, **output):
    """k-error linear complexity by exhaustive search."""
    try:
        params = _sequence_input(bits, hex_text, positions, n)
    except SeqCubeError as e:
        _fail(e, e.exit_code)
    params["k"] = k
    _run("klc", "klc", dict(params), output, **params)


@cli.command("construct")
@click.option("--n", "n", type=int, required=True, help="Period exponent.")
@click.option("--edges", required=True, help="Comma-separated edge exponents.")
@click.option("--anchor", type=int, default=0, show_default=True, help="Base vertex.")
@click.option("--offsets", default=None, help="Odd multipliers per edge (default all 1).")
@output_options
def construct(n, edges, anchor, offsets, **output):
    """Materialize a cube from its edges, anchor and odd offsets."""
    try:
        edge_list = _int_list(edges, "edge")
        offset_list = [1] * len(edge_list) if offsets is None else _int_list(offsets, "offset")
    except SeqCubeError as e:
        _fail(e, e.exit_code)
    params = {"n": n, "edges": edge_list, "anchor": anchor, "offsets": offset_list}
    _run("construct", "construct", dict(params), output, **params)


@cli.command("maxklc")
@click.option("--n", "n", type=int, required=True, help="Period exponent.")
@click.option("--k", "k", type=int, required=True, help="Error budget.")
@output_options
def maxklc(n, k, **output):
    """Maximum k-error linear complexity over all sequences of period 2^n."""
    _run("maxklc", "maxklc", {"n": n, "k": k}, output, n=n, k=k)


@cli.command("census")
@click.option("--n", "n", type=int, required=True, help="Period exponent.")
@click.option(
    "--edges", "edges", multiple=True, required=True,
    help="Edge exponents of one cube, comma-separated; repeat for up to three cubes.",
)
@click.option("--verify", is_flag=True, help="Also count by exhaustive enumeration.")
@output_options
def census(n, edges, verify, **output):
    """Closed-form count of cube configurations, optionally verified."""
    try:
        edge_sets = [_int_list(e, "edge") for e in edges]
    except SeqCubeError as e:
        _fail(e, e.exit_code)
    echo = {"n": n, "edge_sets": edge_sets, "verify": verify}
    _run("census", "census", echo, output, n=n, edge_sets=edge_sets, verify=verify)


@cli.command("quad-audit")
@click.option("--n", "n", type=int, required=True, help="Period exponent (2..4).")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), help="Write witnesses here.")
@output_options
def quad_audit(n, csv_path, **output):
    """Audit the four-element complexity predictor against Games-Chan."""
    _run("quad-audit", "quad-audit", {"n": n}, output, csv_path=csv_path, n=n)


@cli.command("scan")
@click.option("--n", "n", type=int, required=True, help="Period exponent.")
@click.option(
    "--filter", "scan_filter",
    type=click.Choice([f.value for f in ScanFilter]),
    default=ScanFilter.PROP32_UNIQUE.value, show_default=True,
)
@click.option("--max-weight", "max_sequence_weight", type=int, help="Largest sequence weight.")
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), help="Write mismatches here.")
@output_options
def scan(n, scan_filter, max_sequence_weight, csv_path, **output):
    """Compare predicted critical points with the oracle spectrum."""
    echo = {"n": n, "scan_filter": scan_filter, "max_sequence_weight": max_sequence_weight}
    _run("scan", "scan", echo, output, csv_path=csv_path, **echo)


if __name__ == "__main__":
    cli()
