import json
from collections.abc import Sequence
from typing import Any

import click
from pydantic import TypeAdapter
from rich import box
from rich.table import Table

from bettilab.catalog import CONSTRUCTORS, CatalogEntry, catalog_entries
from bettilab.cli.utils import Console
from bettilab.enums import CellStatus, OutputFormat
from bettilab.exceptions import BettilabValueError
from bettilab.jinja import render_reports
from bettilab.models.betti import BettiTable
from bettilab.models.projection import ProjectionTrace
from bettilab.models.report import VerificationReport
from bettilab.verify import reports_to_csv

__all__ = [
    "build_params",
    "show_catalog",
    "show_reports",
    "show_table",
    "show_trace",
]


def show_catalog(output_format: OutputFormat) -> None:
    """Print the catalog entries; a table on the console, JSON or CSV on stdout."""
    entries = catalog_entries()
    match output_format:
        case OutputFormat.pretty:
            table = Table(
                "Name", "Constructor", "Parameters", "(n, d, e, g)", "Case", title="Catalog", box=box.MINIMAL
            )
            for entry in entries:
                params = ", ".join(f"{k}={v}" for k, v in entry.params.items())
                e = entry.expected
                table.add_row(entry.name, entry.constructor, params, f"({e.n}, {e.d}, {e.e}, {e.g})", entry.case.value)
            Console().print(table, justify="center")
        case OutputFormat.json:
            EntryList: TypeAdapter[list[CatalogEntry]] = TypeAdapter(list[CatalogEntry])
            click.echo(EntryList.dump_json(list(entries), indent=2).decode("utf-8"))
        case OutputFormat.csv:
            click.echo("name,constructor,n,d,e,g,case")
            for entry in entries:
                e = entry.expected
                click.echo(f"{entry.name},{entry.constructor},{e.n},{e.d},{e.e},{e.g},{entry.case.value}")


def build_params(
    constructor: str,
    a: str | None = None,
    d: int | None = None,
    g: int | None = None,
    n: int | None = None,
    r: int | None = None,
) -> dict[str, Any]:
    """Constructor parameters from the command line options; `--a` is a comma separated list for scrolls.

    Raises:
        BettilabValueError: If `--a` is not a list of integers.
    """
    if constructor not in CONSTRUCTORS:
        raise BettilabValueError(f"unknown constructor {constructor!r}, choose from {', '.join(CONSTRUCTORS)}")
    params: dict[str, Any] = {}
    if a is not None:
        try:
            values = [int(value) for value in a.split(",")]
        except ValueError:
            raise BettilabValueError(f"--a expects comma separated integers, got {a!r}") from None
        params["a"] = values if constructor == "scroll" or len(values) > 1 else values[0]
    params |= {key: value for key, value in {"d": d, "g": g, "n": n, "r": r}.items() if value is not None}
    return params


def show_table(table: BettiTable, output_format: OutputFormat) -> None:
    match output_format:
        case OutputFormat.pretty:
            click.echo(table.header())
            click.echo(table.grid())
        case OutputFormat.json:
            click.echo(table.to_json())
        case OutputFormat.csv:
            click.echo(table.to_csv(), nl=False)


def show_reports(reports: Sequence[VerificationReport], output_format: OutputFormat) -> None:
    match output_format:
        case OutputFormat.pretty:
            click.echo(render_reports(reports), nl=False)
        case OutputFormat.json:
            documents = [json.loads(report.to_json()) for report in reports]
            click.echo(json.dumps(documents[0] if len(documents) == 1 else documents, indent=2, ensure_ascii=False))
        case OutputFormat.csv:
            click.echo(reports_to_csv(reports), nl=False)


def show_trace(trace: ProjectionTrace, output_format: OutputFormat) -> None:
    """Print the predictions of a projection chain and their check against the direct computation."""
    match output_format:
        case OutputFormat.pretty:
            table = Table(
                "Step", "Cell", "Twist", "Predicted", "Computed", "Rule", title="Predictions", box=box.MINIMAL
            )
            for prediction in trace.predictions:
                if prediction.predicted == CellStatus.no_prediction:
                    continue
                computed = prediction.computed.value if prediction.computed else "n/a"
                style = "" if prediction.agrees else "[red]"
                table.add_row(
                    str(prediction.step),
                    str(prediction.cell),
                    prediction.twist.value,
                    prediction.predicted.value,
                    f"{style}{computed}",
                    prediction.rule.value if prediction.rule else "n/a",
                )
            Console().print(table, justify="center")
            Console().print(f"undecided cells: {trace.undecided or 'none'}")
            if trace.rejected_seeds:
                Console().print(f"[yellow]seeds with special centers: {trace.rejected_seeds}")
            if trace.violations:
                Console().print(f"[red]violated inequalities: {[v.inequality for v in trace.violations]}")
        case OutputFormat.json:
            click.echo(trace.model_dump_json(indent=2))
        case OutputFormat.csv:
            click.echo("step,seed,p,q,twist,predicted,computed,rule")
            for prediction in trace.predictions:
                p, q = prediction.cell
                computed = prediction.computed.value if prediction.computed else ""
                rule = prediction.rule.value if prediction.rule else ""
                click.echo(
                    f"{prediction.step},{prediction.seed},{p},{q},{prediction.twist.value},"
                    f"{prediction.predicted.value},{computed},{rule}"
                )
