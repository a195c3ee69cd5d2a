"""Configuration and input data models for hyperchroma."""

from pathlib import Path
from typing import Annotated, Literal, Self

from pydantic import BaseModel, Field, model_validator

SEED_LIMIT = 2**64

Probability = Annotated[float, Field(gt=0.0, lt=1.0)]
PSetting = Probability | Literal["auto"]
Seed = Annotated[int, Field(ge=0, lt=SEED_LIMIT)]


class HyperchromaConfig(BaseModel):
    """Persistent defaults shared by the CLI and the MCP server.

    Attributes:
        r: Number of colors
        p: Colorless probability for phase 1, or "auto" for the closed-form choice
        max_retries: Attempts per coloring run
        seed: Master seed
        workers: Worker processes for experiments
        lll_grid_points: Grid points per variable in the local lemma search
        oracle_time_cap: Seconds an exhaustive oracle search may run
    """

    r: int = Field(default=2, ge=2)
    p: PSetting = "auto"
    max_retries: int = Field(default=1000, gt=0)
    seed: Seed = 0
    workers: int = Field(default=1, gt=0)
    lll_grid_points: int = Field(default=64, ge=4)
    oracle_time_cap: float = Field(default=60.0, gt=0)


class ColorerConfig(BaseModel):
    """Parameters of one two-phase coloring run."""

    r: int = Field(default=2, ge=2)
    p: PSetting = "auto"
    max_retries: int = Field(default=1000, gt=0)
    seed: Seed = 0

    @classmethod
    def from_config(cls, config: HyperchromaConfig, **overrides: object) -> Self:
        """Take r, p, max_retries and seed from the persistent config, then overrides."""
        data = config.model_dump(include={"r", "p", "max_retries", "seed"})
        data.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**data)


class BoundsInput(BaseModel):
    """Parameters for evaluating the closed-form lower bounds on m(n, r)."""

    n: int = Field(ge=3)
    r: int = Field(ge=2)
    q: float | None = Field(default=None, gt=0)


class GeneratorSpec(BaseModel):
    """Random n-uniform instance: m edges on v vertices."""

    v: int = Field(gt=0)
    n: int = Field(gt=0)
    m: int = Field(ge=0)

    @model_validator(mode="after")
    def _edge_fits(self) -> Self:
        if self.n > self.v:
            raise ValueError(f"edge size n={self.n} exceeds vertex count v={self.v}")
        return self


class ExperimentSpec(BaseModel):
    """A Monte Carlo sweep: one coloring run per trial.

    Exactly one of input_path and generator must be given.
    """

    input_path: Path | None = None
    generator: GeneratorSpec | None = None
    r: int = Field(default=2, ge=2)
    p: PSetting = "auto"
    trials: int = Field(default=1, ge=1)
    max_retries: int = Field(default=1000, gt=0)
    seed: Seed = 0
    workers: int = Field(default=1, gt=0)
    output_path: Path

    @model_validator(mode="after")
    def _one_source(self) -> Self:
        if (self.input_path is None) == (self.generator is None):
            raise ValueError("give exactly one of input_path or generator")
        return self
