"""Configuration for percmax runs."""

import os
from pathlib import Path
from typing import List, Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

from percmax.utils.exceptions import InvalidInputError


class Settings(BaseModel):
    """Process-wide settings, usually read from the environment."""

    cache_path: Optional[Path] = Field(None, description="CSV cache of the memo table")
    jobs: int = Field(1, ge=1, description="Worker processes for parallel sweeps")
    oracle_cap: int = Field(25, ge=1, le=63, description="Largest grid the oracle accepts without --force")
    log_level: str = Field("WARNING", description="Logging level name")
    render_scale: int = Field(12, ge=1, description="SVG pixels per cell")

    @classmethod
    def from_env(cls) -> "Settings":
        """
        Create settings from environment variables (and a .env file, if any).

        Returns:
            Settings instance
        """
        load_dotenv()
        cache = os.getenv("PERCMAX_CACHE")
        return cls(
            cache_path=Path(cache) if cache else None,
            jobs=int(os.getenv("PERCMAX_JOBS", "1")),
            oracle_cap=int(os.getenv("PERCMAX_ORACLE_CAP", "25")),
            log_level=os.getenv("PERCMAX_LOG_LEVEL", "WARNING").upper(),
            render_scale=int(os.getenv("PERCMAX_RENDER_SCALE", "12")),
        )


class RunConfig(BaseModel):
    """Validated options of a single command-line invocation."""

    command: Literal["solve", "construct", "simulate", "oracle", "bounds", "table"]
    dims: List[int] = Field(default_factory=list)
    topology: Optional[Literal["box", "torus"]] = None
    input_path: Optional[Path] = None
    output_path: Optional[Path] = None
    jobs: int = Field(1, ge=1)
    render_path: Optional[Path] = None
    render_scale: int = Field(12, ge=1)
    trace: bool = False
    cache_path: Optional[Path] = None

    def validate_paths(self) -> None:
        """
        Check input and output locations before any work starts.

        Raises:
            InvalidInputError: If an input is missing or an output directory does not exist
        """
        if self.input_path is not None and not self.input_path.is_file():
            raise InvalidInputError(f"Input file not found: {self.input_path}")
        for target in (self.output_path, self.render_path):
            if target is not None and not target.resolve().parent.is_dir():
                raise InvalidInputError(f"Output directory does not exist: {target.parent}")
        if self.cache_path is not None and self.cache_path.exists() and not self.cache_path.is_file():
            raise InvalidInputError(f"Cache path is not a file: {self.cache_path}")
