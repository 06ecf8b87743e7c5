"""
Command-line entry point ``hybrid-mera``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from .errors import (
    ConfigurationError,
    InvalidSizeError,
    NoiseModelError,
    NumericalError,
    OperatorValidationError,
    RetractionError,
    ShadowSetError,
)
from .experiments import (
    cmd_analyze,
    cmd_anneal,
    cmd_noisy_optimize,
    cmd_optimize,
    cmd_protocol_study,
    cmd_shadows_sample,
)
from .models.experiments import ExperimentConfig

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3

COMMANDS = {
    "anneal": cmd_anneal,
    "optimize": cmd_optimize,
    "protocol-study": cmd_protocol_study,
    "noisy-optimize": cmd_noisy_optimize,
    "analyze": cmd_analyze,
    "shadows-sample": cmd_shadows_sample,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hybrid-mera",
        description="Quantum annealing + MERA post-processing experiments on the TFIM.",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub = subparsers.add_parser(name)
        sub.add_argument("--config", required=True, type=Path, help="experiment JSON file")
        sub.add_argument("--out", type=Path, default=Path("out"), help="output directory")
        sub.add_argument("--seed-override", type=int, default=None, help="derive all seeds from this one")
        sub.add_argument("--large", action="store_true", help="admit up to 24 sites (memory heavy)")
        sub.add_argument("--log-level", default="INFO", help="logging level")
        if name == "analyze":
            sub.add_argument("--shadows", type=Path, default=None, help="snapshot JSONL file")
            sub.add_argument("--mera", type=Path, default=None, help="MERA JSON file")
    return parser


def load_config(path: Path, large: bool = False, seed_override: Optional[int] = None) -> ExperimentConfig:
    """Read and validate an experiment file (``--large`` and seed overrides applied)."""
    if not path.exists():
        raise ConfigurationError(f"config file {path} does not exist")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as error:
        raise ConfigurationError(f"config file {path} is not valid JSON: {error}") from error
    if large:
        data["large"] = True
    config = ExperimentConfig.model_validate(data)
    if seed_override is not None:
        config = config.with_seed_override(seed_override)
    return config


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )

    try:
        config = load_config(args.config, args.large, args.seed_override)
        command = COMMANDS[args.command]
        if args.command == "analyze":
            paths = command(config, args.out, shadows_path=args.shadows, mera_path=args.mera)
        else:
            paths = command(config, args.out)
    except (ValidationError, ConfigurationError, InvalidSizeError, NoiseModelError, ShadowSetError) as error:
        logger.error(f"Configuration error: {error}")
        return EXIT_CONFIG
    except (NumericalError, RetractionError, OperatorValidationError) as error:
        logger.error(f"Numerical failure: {error}")
        return EXIT_NUMERICAL

    logger.info(f"{args.command} wrote {len(paths)} files to {args.out}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
