from collections.abc import Iterable
from functools import cache
from pathlib import Path
from typing import Any

from jinja2 import Environment, FileSystemLoader, StrictUndefined, is_undefined

from bettilab.exceptions import BettilabValueError
from bettilab.models.report import VerificationReport

TEMPLATES_DIR = Path(__file__).parent / "templates"


def mark_filter(value: Any, arg: str = "ok,FAIL,n/a") -> str:
    """Map a truth value to one of the comma separated words of `arg`.

    ==========  ======================  ======
    Value       Argument                Output
    ==========  ======================  ======
    ``True``    ``"ok,FAIL,n/a"``       ``ok``
    ``False``   ``"ok,FAIL,n/a"``       ``FAIL``
    ``None``    ``"ok,FAIL,n/a"``       ``n/a``
    ``None``    ``"ok,FAIL"``           ``FAIL``
    ==========  ======================  ======
    """
    bits = arg.split(",")
    if len(bits) < 2 or len(bits) > 3:
        raise BettilabValueError("invalid argument")
    try:
        yes, no, maybe = bits
    except ValueError:
        # no word for None given
        yes, no, maybe = bits[0], bits[1], bits[1]
    if value is None or is_undefined(value):
        return maybe
    return yes if value else no


@cache
def get_jinja_env(templates: Path = TEMPLATES_DIR) -> Environment:
    """Jinja2 environment for the plain text templates shipped with the package."""
    env = Environment(
        autoescape=False,
        loader=FileSystemLoader(templates),
        undefined=StrictUndefined,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    env.filters["mark"] = mark_filter
    return env


def render_reports(reports: Iterable[VerificationReport], template: str = "report.txt.j2") -> str:
    """Render verification reports with a text template.

    Raises:
        BettilabValueError: If the template is not a Jinja2 template.
    """
    if not template.endswith(".j2"):
        raise BettilabValueError("unsupported template type")
    return get_jinja_env().get_template(template).render(reports=list(reports))
