# -*- coding: utf-8 -*-
import argparse
import logging
from typing import TYPE_CHECKING, Any, Dict, List, Optional

from vesselforge.config import RunConfig
from vesselforge.errors import ConfigError

if TYPE_CHECKING:
    from vesselforge.cli.command_manager import CommandManager

EXIT_OK, EXIT_FATAL, EXIT_PARTIAL = 0, 1, 2


def float_list(text: str) -> List[float]:
    """``"0.2,0.3,0.5"`` -> ``[0.2, 0.3, 0.5]``."""
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}") from None


def int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def name_list(text: str) -> List[str]:
    return [v.strip() for v in text.split(",") if v.strip()]


class BasicCommand:
    """Base class of every subcommand.

    Attributes
    ----------
    name : str
        Subcommand name on the command line
    help : str
        One-line description shown by ``--help``
    manager : CommandManager
        Manager the command is registered with
    logger : logging.Logger
        Logger instance, injected on registration
    """

    name = ""
    help = ""

    def __init__(self) -> None:
        self.manager: Optional["CommandManager"] = None
        self.logger: Optional[logging.Logger] = None

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        """Add command-specific arguments; the shared flags are already present."""

    def overrides(self, args: argparse.Namespace) -> Dict[str, Any]:
        """Configuration key paths set by the shared flags."""
        ogrid = getattr(args, "ogrid", None)
        layers = getattr(args, "layers", None)
        if ogrid is not None and len(ogrid) != 3:
            raise ConfigError(f"--ogrid expects three fractions, got {ogrid}")
        if layers is not None and len(layers) != 2:
            raise ConfigError(f"--layers expects two counts, got {layers}")
        return {
            "mesh.N": args.N,
            "mesh.relax_iters": args.relax_iters,
            "mesh.apex_radius": args.apex_radius,
            "mesh.ogrid": ogrid,
            "mesh.layers": layers,
            "fit.strategy": args.strategy,
            "fit.criterion": args.criterion,
            "run.seed": args.seed,
            "run.jobs": args.jobs,
            "run.formats": args.format,
            "run.output": args.output,
            "run.resample_density": args.density[0] if args.density else None,
        }

    def run(self, args: argparse.Namespace, config: RunConfig) -> int:
        """Execute the command and return its exit status.

        Subclasses must override this method.
        """
        raise NotImplementedError("commands must implement run")
