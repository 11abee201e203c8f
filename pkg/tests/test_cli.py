import json
import logging
import unittest
from pathlib import Path

import trimesh

from tests.fixtures import furcation_network, temp_dir, tube_network, write_swc, y_network
from vesselforge.centerline import load_centerline
from vesselforge.cli import EXIT_FATAL, EXIT_OK, EXIT_PARTIAL, create_manager
from vesselforge.cli.commands import FitCommand

FAST = ["--jobs", "1", "--N", "16", "--layers", "2,2"]


def quiet_logger() -> logging.Logger:
    logger = logging.getLogger("vesselforge.test_cli")
    logger.setLevel(logging.CRITICAL)
    return logger


def run(*argv: str) -> int:
    return create_manager(quiet_logger()).run(list(argv))


def read_json(path: Path):
    return json.loads(path.read_text(encoding="UTF-8"))


class TestCommandManager(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing CLI CommandManager **")

    def test_register(self):
        # Test every command is registered once
        manager = create_manager(quiet_logger())
        names = [c.name for c in manager.commands]
        self.assertEqual(names, ["fit", "mesh", "quality", "benchmark", "deform", "edit"])
        with self.assertRaises(ValueError):
            manager.register_command(FitCommand())
        self.assertIsNone(manager.get_command("serve"))

    def test_usage_errors(self):
        # Test argument errors exit with the fatal status
        self.assertEqual(run(), EXIT_FATAL)
        self.assertEqual(run("serve"), EXIT_FATAL)
        self.assertEqual(run("mesh", "--N", "many"), EXIT_FATAL)
        self.assertEqual(run("mesh", "--strategy", "SPLINE"), EXIT_FATAL)
        self.assertEqual(run("--version"), EXIT_OK)

    def test_fatal_errors(self):
        # Test missing input, bad config and bad values leave no output behind
        with temp_dir() as tmp:
            out = Path(tmp) / "out"
            self.assertEqual(run("fit", "-o", str(out)), EXIT_FATAL)
            self.assertEqual(run("fit", "-i", str(Path(tmp) / "none.swc"), "-o", str(out)), EXIT_FATAL)
            bad = Path(tmp) / "bad.yml"
            bad.write_text("mesh:\n  N: [16\n", encoding="UTF-8")
            swc = write_swc(tube_network(), tmp)
            self.assertEqual(run("fit", "-i", str(swc), "-o", str(out), "-c", str(bad)), EXIT_FATAL)
            self.assertEqual(run("mesh", "-i", str(swc), "-o", str(out), "--N", "18"), EXIT_FATAL)
            self.assertEqual(run("mesh", "-i", str(swc), "-o", str(out), "--ogrid", "0.5,0.5"), EXIT_FATAL)
            self.assertFalse(out.exists())


class TestPipelineCommands(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing CLI PipelineCommands **")

    def test_fit(self):
        # Test the fit command writes the model and its reports
        with temp_dir() as tmp:
            swc = write_swc(y_network(), tmp)
            out = Path(tmp) / "fit"
            self.assertEqual(run("fit", "-i", str(swc), "-o", str(out), *FAST), EXIT_OK)
            for name in ("model.json", "summary.json", "failures.json", "config.json"):
                self.assertTrue((out / name).is_file(), name)
            summary = read_json(out / "summary.json")
            self.assertEqual(summary["furcations"]["total"], 1)
            self.assertEqual(summary["vessels"]["modeled"], 3)
            self.assertEqual(summary["exit_status"], EXIT_OK)
            self.assertEqual(read_json(out / "config.json")["mesh"]["N"], 16)

    def test_mesh_and_quality(self):
        # Test meshing a tube, then reporting the written volume
        with temp_dir() as tmp:
            swc = write_swc(tube_network(), tmp)
            out = Path(tmp) / "mesh"
            code = run("mesh", "-i", str(swc), "-o", str(out), "--format", "vtk,obj,json", *FAST)
            self.assertEqual(code, EXIT_OK)
            for name in ("surface.vtk", "volume.vtk", "surface.obj", "model.json", "quality.json",
                         "quality_histogram.csv", "summary.json"):
                self.assertTrue((out / name).is_file(), name)
            summary = read_json(out / "summary.json")
            self.assertGreater(summary["cells"], 0)
            self.assertGreater(summary["quality"]["min"], 0.0)

            report_dir = Path(tmp) / "quality"
            self.assertEqual(run("quality", "-i", str(out / "volume.vtk"), "-o", str(report_dir)), EXIT_OK)
            quality = read_json(report_dir / "quality.json")
            self.assertEqual(quality["summary"]["cells"], summary["cells"])
            self.assertEqual(quality["verdicts"], {"vessel:0": "ok"})

    def test_mesh_network_from_model(self):
        # Test a saved model can be meshed again without the centerline
        with temp_dir() as tmp:
            swc = write_swc(y_network(), tmp)
            first = Path(tmp) / "first"
            code = run("mesh", "-i", str(swc), "-o", str(first), "--format", "json", *FAST)
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(read_json(first / "failures.json"), [])
            summary = read_json(first / "summary.json")
            self.assertEqual(summary["exit_status"], EXIT_OK)
            self.assertEqual((summary["furcations"]["failed"], summary["vessels"]["failed"]), (0, 0))

            second = Path(tmp) / "second"
            code = run("mesh", "--model", str(first / "model.json"), "-o", str(second), "--surface-only", *FAST)
            self.assertEqual(code, EXIT_OK)
            self.assertTrue((second / "surface.vtk").is_file())
            self.assertFalse((second / "volume.vtk").exists())
            summary = read_json(second / "summary.json")
            self.assertEqual(summary["furcations"]["meshed"], 1)
            self.assertNotIn("cells", summary)

    def test_deform(self):
        # Test a tube inflated onto a wider cylinder
        with temp_dir() as tmp:
            swc = write_swc(tube_network(), tmp)
            target = Path(tmp) / "target.stl"
            transform = trimesh.transformations.rotation_matrix(1.5707963267948966, [0.0, 1.0, 0.0])
            transform[:3, 3] = [10.0, 0.0, 0.0]
            trimesh.creation.cylinder(radius=1.3, height=40.0, sections=96, transform=transform).export(str(target))
            out = Path(tmp) / "deform"
            self.assertEqual(run("deform", "-i", str(swc), "-t", str(target), "-o", str(out), *FAST), EXIT_OK)
            self.assertTrue((out / "volume.vtk").is_file())
            self.assertIn("deform", read_json(out / "summary.json")["timings"])
            self.assertEqual(run("deform", "-i", str(swc), "-t", str(Path(tmp) / "t.ply"), "-o", str(out)), EXIT_FATAL)


class TestPartialFailures(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing CLI PartialFailures **")

    def mesh(self, net, *extra: str):
        with temp_dir() as tmp:
            swc = write_swc(net, tmp)
            out = Path(tmp) / "mesh"
            code = run("mesh", "-i", str(swc), "-o", str(out), "--format", "json", *FAST, *extra)
            return code, read_json(out / "failures.json"), read_json(out / "summary.json")

    def test_backwards_outlet(self):
        # Test an upstream outlet fails its furcation and the vessels are still meshed
        code, failures, summary = self.mesh(furcation_network((30.0, 150.0)))
        self.assertEqual(code, EXIT_PARTIAL)
        self.assertEqual([(f["kind"], f["reason"]) for f in failures], [("furcation", "oriented model mismatch")])
        self.assertEqual(summary["vessels"]["meshed"], 3)
        self.assertEqual(summary["exit_status"], EXIT_PARTIAL)

    def test_tight_hook(self):
        # Test a vessel bent tighter than its radius fails alone
        code, failures, summary = self.mesh(furcation_network(hook_radius=0.5), "--strategy", "GNP")
        self.assertEqual(code, EXIT_PARTIAL)
        self.assertEqual([(f["kind"], f["reason"]) for f in failures], [("vessel", "too high curvature")])
        self.assertEqual(summary["furcations"]["meshed"], 1)
        self.assertEqual(summary["vessels"]["meshed"], 2)
        self.assertGreater(summary["cells"], 0)


class TestEditCommand(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing CLI EditCommand **")

    def test_edit_flags(self):
        # Test scaling then removing a branch
        with temp_dir() as tmp:
            swc = write_swc(y_network(), tmp)
            out = Path(tmp) / "edit"
            code = run("edit", "-i", str(swc), "-o", str(out), "--scale-radius", "1", "1.5", "--remove-branch", "2")
            self.assertEqual(code, EXIT_OK)
            edited = load_centerline(out / "edited.swc")
            self.assertEqual(edited.junctions, [])
            self.assertEqual([op["op"] for op in read_json(out / "edits.json")], ["scale_radius", "remove_branch"])
            summary = read_json(out / "summary.json")
            self.assertEqual((summary["branches_before"], summary["branches_after"]), (3, 1))

    def test_edit_ops_file(self):
        # Test a YAML operation list followed by a refit
        with temp_dir() as tmp:
            swc = write_swc(y_network(), tmp)
            ops = Path(tmp) / "ops.yml"
            ops.write_text("- op: scale_radius\n  branch: 2\n  factor: 0.5\n", encoding="UTF-8")
            out = Path(tmp) / "edit"
            code = run("edit", "-i", str(swc), "-o", str(out), "--ops", str(ops), "--refit", *FAST)
            self.assertIn(code, (EXIT_OK, EXIT_PARTIAL))
            self.assertTrue((out / "model.json").is_file())

    def test_edit_errors(self):
        # Test missing operations and bad branch indices
        with temp_dir() as tmp:
            swc = write_swc(y_network(), tmp)
            out = Path(tmp) / "edit"
            self.assertEqual(run("edit", "-i", str(swc), "-o", str(out)), EXIT_FATAL)
            self.assertEqual(run("edit", "-i", str(swc), "-o", str(out), "--remove-branch", "9"), EXIT_FATAL)
            self.assertFalse(out.exists())


class TestBenchmarkCommand(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing CLI BenchmarkCommand **")

    def test_small_grid(self):
        # Test a one-truth, one-strategy benchmark
        with temp_dir() as tmp:
            out = Path(tmp) / "bench"
            code = run(
                "benchmark", "-o", str(out), "--truths", "tapered_tube", "--density", "4",
                "--strategies", "GNP", "--repeats", "1", "--jobs", "1", "--plot-data",
            )
            self.assertEqual(code, EXIT_OK)
            summary = read_json(out / "summary.json")
            self.assertEqual(summary["datasets"], 10)
            self.assertEqual(summary["fits"], 10)
            self.assertTrue((out / "results.csv").is_file())
            self.assertTrue((out / "plot" / "radius_only_GNP.dat").is_file())

    def test_unknown_truth(self):
        # Test an unknown ground truth name
        with temp_dir() as tmp:
            self.assertEqual(run("benchmark", "-o", str(Path(tmp) / "b"), "--truths", "spiral"), EXIT_FATAL)


if __name__ == "__main__":
    unittest.main()
