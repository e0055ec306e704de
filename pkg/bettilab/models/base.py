from pydantic import BaseModel, ConfigDict
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)


class BettilabBaseModel(BaseModel):
    """Strict pydantic model: unknown keys are rejected and values are never coerced, assignments included."""

    model_config = ConfigDict(extra="forbid", strict=True, validate_assignment=True)


class BettilabFrozenModel(BettilabBaseModel):
    """Strict model whose values are immutable after construction.

    Algebraic artifacts (tables, model files, projection records) are shared between computations, so they never
    change once validated.
    """

    model_config = ConfigDict(extra="forbid", strict=True, frozen=True)


class BettilabBaseSettings(BaseSettings):
    """Pydantic's BaseSettings with custom configuration."""

    model_config = SettingsConfigDict(
        env_prefix="BETTILAB_",
        extra="forbid",
        validate_assignment=True,
    )

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        """Define the sources and their order for loading the settings values.

        Environment variables win over values loaded from the settings file.

        Args:
            settings_cls: The Settings class.
            init_settings: The `InitSettingsSource` instance.
            env_settings: The `EnvSettingsSource` instance.
            dotenv_settings: The `DotEnvSettingsSource` instance.
            file_secret_settings: The `SecretsSettingsSource` instance.

        Returns:
            A tuple containing the sources and their order for loading the settings values.
        """
        return env_settings, init_settings, dotenv_settings, file_secret_settings
