import json
from pathlib import Path
from typing import Annotated, Self

from annotated_types import Ge, Le
from click import get_app_dir
from pydantic import FilePath, ValidationError, model_validator

from bettilab.algebra.field import GroundField
from bettilab.enums import OutputFormat
from bettilab.exceptions import BettilabPathError, BettilabValueError
from bettilab.models.base import BettilabBaseSettings
from bettilab.types import TypeDimension, TypeFieldSpec, TypeSeed

DEFAULT_FIELD = "fp:32003"


class SessionConfig(BettilabBaseSettings):
    """Settings of a bettilab session.

    Attributes:
        field: Field of the table computations, `q` or `fp:<p>`.
        seed: Global seed of the randomized constructions.
        format: Output format of tables and reports.
        p_max: Largest homological index of the tables, e + t + 1 if unset.
        q_max: Largest weight of the tables.
        m_window: Degrees (lo, hi) of the module pieces, derived from q_max if unset.
        coefficient_bound: Random coefficients are drawn from [-B, B].
        max_reseeds: Number of reseeds a guarded construction may use.
        recheck_over_q: Re-check tables computed over F_p with the rationals.

    Raises:
        BettilabPathError: If the file is not found or permission is denied.
        BettilabValueError: If the JSON file is invalid.
    """

    field: TypeFieldSpec = DEFAULT_FIELD
    seed: TypeSeed = 0
    format: OutputFormat = OutputFormat.pretty
    p_max: TypeDimension | None = None
    q_max: Annotated[int, Ge(0), Le(8)] = 3
    m_window: tuple[int, int] | None = None
    coefficient_bound: Annotated[int, Ge(1)] = 50
    max_reseeds: Annotated[int, Ge(0), Le(100)] = 5
    recheck_over_q: bool = True

    @model_validator(mode="after")
    def window_is_ordered(self) -> Self:
        if self.m_window is not None and self.m_window[0] > self.m_window[1]:
            raise ValueError("m_window must satisfy lo ≤ hi")
        return self

    @staticmethod
    def get_path() -> Path:
        return Path(get_app_dir(app_name="bettilab")) / "settings.json"

    @classmethod
    def load_from(cls, file: FilePath) -> Self:
        """Load the settings file; environment variables still win over its values."""
        try:
            data = json.loads(file.read_bytes())
        except FileNotFoundError:
            raise BettilabPathError(f"file not found at '{file}'") from None
        except PermissionError:
            raise BettilabPathError(f"permission denied for '{file}'") from None
        except json.JSONDecodeError as e:
            raise BettilabValueError(f"invalid settings\n\n{e}") from e
        try:
            return cls(**data)
        except (TypeError, ValidationError) as e:
            raise BettilabValueError(f"invalid settings\n\n{e}") from e

    @property
    def ground_field(self) -> GroundField:
        return GroundField.from_spec(self.field)

    def window(self) -> tuple[int, int]:
        """Module window of the session: `m_window`, or [-1, q_max + 1]."""
        return self.m_window if self.m_window is not None else (-1, self.q_max + 1)
