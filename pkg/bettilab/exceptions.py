import functools
import os
import sys
from collections.abc import Callable, Sequence
from typing import ParamSpec, TypeVar

import click
import jinja2
import pydantic
import sympy
from pydantic import ValidationError
from rich.markup import escape

from bettilab.cli.utils import Console
from bettilab.enums import ExitCode


class BettilabException(Exception):
    """There was an ambiguous exception."""


class BettilabPathError(BettilabException):
    """Path error."""


class BettilabValueError(BettilabException, ValueError):
    """Value error."""


class BettilabShapeError(BettilabValueError):
    """Matrix dimensions do not fit together."""


class HomogeneityError(BettilabValueError):
    """Input is not homogeneous (or a substitution image is not a linear form)."""


class WindowError(BettilabException):
    """A graded piece outside of the computed window was requested."""

    def __init__(self, needed: Sequence[int], available: tuple[int, int]) -> None:
        self.needed = sorted(set(needed))
        self.available = available
        super().__init__(
            f"graded pieces {self.needed} are needed, but the module window is {available[0]}..{available[1]}"
        )


class StabilizationError(BettilabException):
    """The Hilbert function did not become polynomial within the sampling cap."""


class IntegrityError(BettilabException):
    """Computed data contradict stored metadata or an algebraic identity."""


class GuardError(BettilabException):
    """A randomized construction failed its guard after all reseeds."""

    def __init__(self, step: str, seeds: Sequence[int]) -> None:
        self.step = step
        self.seeds = list(seeds)
        super().__init__(f"{step}: guard failed for seeds {self.seeds}")


class UnsupportedModelError(BettilabException):
    """The model lacks data needed for the requested computation."""


class RepresentativesError(BettilabException):
    """Cohomology representatives were not computed."""


class InconclusiveError(BettilabException):
    """The computed window does not allow a definite answer."""


class PredictionError(BettilabException):
    """A predicted cell status contradicts the directly computed table."""

    def __init__(self, message: str, trace: Sequence[str]) -> None:
        self.trace = list(trace)
        super().__init__("\n".join([message, *self.trace]))


P = ParamSpec("P")
R = TypeVar("R")


def handle_exceptions(func: Callable[P, R]) -> Callable[P, R]:
    """Decorator for pretty printing bettilab exceptions and leaving with a stable exit code.

    If the environment variable DEBUG is set to '1', the full exception traceback will be printed with local variables
    shown. `InconclusiveError` exits with `ExitCode.inconclusive`, everything else with `ExitCode.usage`.
    """

    @functools.wraps(func)
    def outer_function(*args: P.args, **kwargs: P.kwargs) -> R:
        try:
            return func(*args, **kwargs)
        except click.ClickException:
            raise
        except Exception as e:
            if isinstance(e, BettilabException | ValidationError):
                Console().print(f"[red]Error:[/red] {escape(str(e))}")
            if os.environ.get("DEBUG", "0") == "1":
                Console().print_exception(show_locals=True, suppress=[click, jinja2, pydantic, sympy])
            else:
                Console().print("\n[yellow]Set environment variable [blue]DEBUG=1[/blue] for more details.")
            sys.exit(ExitCode.inconclusive if isinstance(e, InconclusiveError) else ExitCode.usage)

    return outer_function
