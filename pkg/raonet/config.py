"""Worker defaults and the pipeline configuration file."""

import logging
import os
import sys
from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, PositiveInt, ValidationError, model_validator

from .errors import ConfigError
from .models import LengthMode, ProfileConvention

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)

WORKERS_ENV = "RAONET_WORKERS"

REPORTS = ("diversity", "bc", "correlate")
DEFAULT_CORRELATE_VARS = ["bc_normalized", "bc_valued_normalized", "d2_cited", "d2_citing"]


def default_workers() -> int:
    """Worker count from RAONET_WORKERS, else the machine's CPU count."""
    value = os.environ.get(WORKERS_ENV)
    if value:
        try:
            workers = int(value)
        except ValueError:
            raise ConfigError(f"{WORKERS_ENV} must be a positive integer, got '{value}'") from None
        if workers < 1:
            raise ConfigError(f"{WORKERS_ENV} must be a positive integer, got '{value}'")
        return workers
    return os.cpu_count() or 1


class ConventionConfig(BaseModel):
    """Every switch that changes the numbers a pipeline produces."""

    model_config = ConfigDict(extra="forbid")

    direction: Literal["cited", "citing", "both"] = "both"
    convention: ProfileConvention = ProfileConvention.SAME_DIRECTION
    drop_loops: bool = False
    valued: bool = True
    length_mode: LengthMode = LengthMode.INVERSE
    symmetrize: bool = False


class LevelConfig(BaseModel):
    """One subset of the previous level, given by labels or partition groups."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1, pattern=r"^[A-Za-z0-9_.-]+$")
    labels: Optional[list[str]] = None
    labels_file: Optional[Path] = None
    groups: Optional[list[int]] = None

    @model_validator(mode="after")
    def _one_selector(self) -> "LevelConfig":
        given = [self.labels is not None, self.labels_file is not None, self.groups is not None]
        if sum(given) != 1:
            raise ValueError(f"level '{self.name}' needs exactly one of labels, labels_file, groups")
        return self


class PipelineConfig(BaseModel):
    """Top-level pipeline file: input network, level chain and reports."""

    model_config = ConfigDict(extra="forbid")

    input: Path
    partition: Optional[Path] = None
    output_dir: Path = Path("raonet-out")
    root_name: str = Field(default="all", pattern=r"^[A-Za-z0-9_.-]+$")
    largest_component: bool = False
    workers: Optional[PositiveInt] = None
    reports: list[Literal["diversity", "bc", "correlate"]] = Field(
        default_factory=lambda: ["diversity"]
    )
    correlate_vars: list[str] = Field(default_factory=lambda: list(DEFAULT_CORRELATE_VARS))
    conventions: ConventionConfig = Field(default_factory=ConventionConfig)
    levels: list[LevelConfig] = Field(default_factory=list)

    @model_validator(mode="after")
    def _check_levels(self) -> "PipelineConfig":
        names = [self.root_name] + [level.name for level in self.levels]
        duplicates = sorted({name for name in names if names.count(name) > 1})
        if duplicates:
            raise ValueError(f"duplicate level name '{duplicates[0]}'")
        if any(level.groups is not None for level in self.levels) and self.partition is None:
            raise ValueError("levels selected by groups need a partition file")
        if "correlate" in self.reports and not {"diversity", "bc"} <= set(self.reports):
            raise ValueError("the correlate report needs both the bc and diversity reports")
        return self

    def resolve(self, base: Path) -> "PipelineConfig":
        """Make relative paths relative to ``base`` (the config file's folder)."""

        def anchor(path: Optional[Path]) -> Optional[Path]:
            if path is None or path.is_absolute():
                return path
            return base / path

        levels = [
            level.model_copy(update={"labels_file": anchor(level.labels_file)})
            for level in self.levels
        ]
        return self.model_copy(update={
            "input": anchor(self.input),
            "partition": anchor(self.partition),
            "output_dir": anchor(self.output_dir),
            "levels": levels,
        })


def load_pipeline_config(path: Path) -> PipelineConfig:
    """Parse and validate a TOML pipeline file.

    Raises:
        ConfigError: the file is missing, is not TOML, or violates the schema
    """
    try:
        with open(path, "rb") as handle:
            raw = tomllib.load(handle)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    try:
        config = PipelineConfig.model_validate(raw)
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "config"
        raise ConfigError(f"{path}: {where}: {first['msg']}") from None
    logger.debug("Loaded pipeline config with %d levels", len(config.levels))
    return config.resolve(Path(path).parent)
