# -*- coding: utf-8 -*-
import argparse
from pathlib import Path
from typing import Any, Dict, List

from vesselforge.centerline import apply_edit_ops, extract_branches, load_centerline, save_centerline
from vesselforge.cli.basic_command import EXIT_OK
from vesselforge.cli.commands.pipeline import PipelineCommand, RunState, write_json
from vesselforge.config import RunConfig
from vesselforge.config.basic_config import to_plain, yaml
from vesselforge.errors import ConfigError, EditError
from vesselforge.model import assemble_network, save_network_model
from vesselforge.utils.atomic import atomic_output_dir


def read_ops(path: str) -> List[Dict[str, Any]]:
    """Edit operations from a YAML or JSON list."""
    with open(path, "r", encoding="UTF-8") as f:
        data = to_plain(yaml.load(f))
    if not isinstance(data, list) or not all(isinstance(op, dict) for op in data):
        raise EditError(f"{path}: expected a list of operations")
    return data


class EditCommand(PipelineCommand):
    """Apply edit operations to a centerline and write the edited network.

    Operations run in order: the ``--ops`` file, then scale, resample,
    rotate and remove flags. Every branch index refers to the network as
    left by the previous operation.
    """

    name = "edit"
    help = "edit a centerline: scale radii, remove, resample, rotate or replace branches"

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument("--ops", help="YAML or JSON list of operations, applied first")
        parser.add_argument("--scale-radius", nargs=2, action="append", default=[], metavar=("BRANCH", "FACTOR"),
                            dest="scale_radius")
        parser.add_argument("--remove-branch", type=int, action="append", default=[], metavar="BRANCH",
                            dest="remove_branch")
        parser.add_argument("--resample", nargs=2, action="append", default=[], metavar=("BRANCH", "DENSITY"))
        parser.add_argument("--rotate", nargs=2, action="append", default=[], metavar=("BRANCH", "DEGREES"))
        parser.add_argument("--axis", type=float, nargs=3, default=(0.0, 0.0, 1.0), help="rotation axis of --rotate")
        parser.add_argument("--refit", action="store_true", help="fit the edited network and write model.json")

    def overrides(self, args: argparse.Namespace) -> Dict[str, Any]:
        values = super().overrides(args)
        values["run.resample_density"] = None
        return values

    def collect_ops(self, args: argparse.Namespace) -> List[Dict[str, Any]]:
        ops = read_ops(args.ops) if args.ops else []
        try:
            ops += [{"op": "scale_radius", "branch": int(b), "factor": float(f)} for b, f in args.scale_radius]
            ops += [{"op": "resample_branch", "branch": int(b), "density": float(d)} for b, d in args.resample]
            ops += [
                {"op": "rotate_branch", "branch": int(b), "angle": float(a), "axis": list(args.axis)}
                for b, a in args.rotate
            ]
        except ValueError as e:
            raise ConfigError(f"invalid edit flag value: {e}") from None
        ops += [{"op": "remove_branch", "branch": b} for b in args.remove_branch]
        return ops

    def run(self, args: argparse.Namespace, config: RunConfig) -> int:
        if not args.input:
            raise ConfigError("--input is required")
        net = load_centerline(args.input, self.logger)
        ops = self.collect_ops(args)
        if not ops:
            raise EditError("no edit operations given")
        before = len(extract_branches(net))
        edited = apply_edit_ops(net, ops)
        after = len(extract_branches(edited))
        self.logger.info("applied %d edit(s): %d -> %d branches", len(ops), before, after)

        state = None
        if args.refit:
            state = RunState(net=edited)
            state.model = assemble_network(
                edited, config.to_fit_config(), config.to_model_options(), jobs=config.jobs, logger=self.logger
            )
        name = "edited" if Path(args.input).is_dir() else "edited.swc"
        with atomic_output_dir(config.output) as staging:
            save_centerline(edited, staging / name, self.logger)
            write_json(staging / "edits.json", ops)
            if state is None:
                write_json(staging / "summary.json", {
                    "command": self.name, "input": str(args.input), "edits": len(ops),
                    "branches_before": before, "branches_after": after,
                })
                return EXIT_OK
            save_network_model(state.model, staging / "model.json")
            return self.finish(staging, state, args)
