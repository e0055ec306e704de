from collections.abc import Callable
from functools import wraps
from typing import Any, ParamSpec, TypeVar

from click import get_current_context
from pydantic import validate_call

from bettilab.models.settings import SessionConfig

P = ParamSpec("P")
R = TypeVar("R")


def load_session(f: Callable[P, R]) -> Callable[P, R]:
    """Decorator which provides the effective `SessionConfig` as the first argument.

    The configuration is loaded from the settings file and the global command line flags stored in the click context
    object override it for this invocation.
    """

    @wraps(f)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> R:
        ctx = get_current_context()
        overrides: dict[str, Any] = (ctx.find_root().obj or {}).get("overrides", {})
        config = load_session_function(overrides)
        return ctx.invoke(f, config, *args, **kwargs)

    return wrapper


def load_session_function(overrides: dict[str, Any] | None = None) -> SessionConfig:
    """Settings file (if present) with environment variables and `overrides` applied; defaults otherwise."""
    path = SessionConfig.get_path()
    config = SessionConfig.load_from(path) if path.is_file() else SessionConfig()
    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    if not overrides:
        return config
    return SessionConfig.model_validate(config.model_dump() | overrides, strict=False)


@validate_call
def write_settings(settings: SessionConfig) -> None:
    """Write settings to a standard system location.

    Args:
        settings: The SessionConfig object to write.
    """
    settings_path = SessionConfig.get_path()
    settings_path.parent.mkdir(parents=True, exist_ok=True)

    with settings_path.open("w", encoding="utf-8") as f:
        f.write(settings.model_dump_json(indent=2, exclude_defaults=True))
        f.write("\n")
