"""
Run configuration for loop-factor.

Values come from ``.loop-factor.yaml`` in the working directory (or a file
given with ``--config``); command-line flags override them.
"""

import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Union

import yaml

from .factorize import DEFAULT_BUDGET_MULTIPLIER

CONFIG_FILENAME = ".loop-factor.yaml"
FORMATS = ("json", "terminal", "markdown")


@dataclass
class RunConfig:
    """Defaults for the CLI and the tool server."""

    # Iteration budget is budget_multiplier * (complexity + 1)
    budget_multiplier: int = DEFAULT_BUDGET_MULTIPLIER

    seed: int = 0
    trace: bool = False
    format: str = "json"

    # Random loop generation
    entry_range: int = 3
    pole_range: int = 3
    factors: int = 3

    # Whether config was loaded from file
    from_file: bool = False


def _apply(config: RunConfig, data: dict) -> None:
    if "budget_multiplier" in data:
        config.budget_multiplier = max(int(data["budget_multiplier"]), 1)
    if "seed" in data:
        config.seed = int(data["seed"])
    if "trace" in data:
        config.trace = bool(data["trace"])
    if "format" in data:
        fmt = str(data["format"])
        if fmt not in FORMATS:
            raise ValueError(f"unknown format {fmt!r}")
        config.format = fmt

    random_section = data.get("random") or {}
    if "entry_range" in random_section:
        config.entry_range = max(int(random_section["entry_range"]), 1)
    if "pole_range" in random_section:
        config.pole_range = max(int(random_section["pole_range"]), 1)
    if "factors" in random_section:
        config.factors = max(int(random_section["factors"]), 0)


def load_run_config(
    directory: Union[str, Path] = ".", path: Optional[Union[str, Path]] = None
) -> RunConfig:
    """
    Load the run configuration.

    ``path`` wins over ``directory/.loop-factor.yaml``. Unreadable files
    produce a warning on stderr and the defaults.
    """

    config = RunConfig()
    config_file = Path(path) if path else Path(directory) / CONFIG_FILENAME
    if not config_file.exists():
        return config

    try:
        with open(config_file) as f:
            data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ValueError("top level must be a mapping")
        _apply(config, data)
        config.from_file = True
    except yaml.YAMLError as e:
        print(f"Warning: Failed to parse {config_file}: {e}", file=sys.stderr)
        return RunConfig()
    except (OSError, ValueError, TypeError) as e:
        print(f"Warning: Failed to load config {config_file}: {e}", file=sys.stderr)
        return RunConfig()

    return config
