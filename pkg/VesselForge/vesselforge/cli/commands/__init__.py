from vesselforge.cli.commands.benchmark import BenchmarkCommand
from vesselforge.cli.commands.deform import DeformCommand
from vesselforge.cli.commands.edit import EditCommand
from vesselforge.cli.commands.fit import FitCommand
from vesselforge.cli.commands.mesh import MeshCommand
from vesselforge.cli.commands.pipeline import PipelineCommand, RunState
from vesselforge.cli.commands.quality import QualityCommand

__all__ = [
    "BenchmarkCommand",
    "DeformCommand",
    "EditCommand",
    "FitCommand",
    "MeshCommand",
    "PipelineCommand",
    "QualityCommand",
    "RunState",
]
