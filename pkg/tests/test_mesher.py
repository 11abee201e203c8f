import unittest
from pathlib import Path
from unittest import mock

import numpy as np

from tests.fixtures import temp_dir, trifurcation_network, y_network
from vesselforge.errors import ConfigError, ConsistencyError, FoldOverError
from vesselforge.mesher import (
    HexMesh,
    MeshParams,
    StructuredSurfaceMesh,
    build_ogrid_volume,
    decompose_furcation,
    expected_counts,
    fillet_polyline_2d,
    mesh_furcation_surface,
    mesh_network,
    mesh_furcation,
    mesh_vessel_surface,
    ogrid_template,
    relax_surface,
    write_obj_quads,
    write_vtk_hex,
    write_vtk_quads,
)
from vesselforge.mesher.exporters import VTK_HEXAHEDRON, VTK_QUAD, read_vtk_cells
from vesselforge.mesher.template import transfinite
from vesselforge.model import TubeSurface, assemble_network
from vesselforge.quality import quality_report, surface_quality_report
from vesselforge.spline import Spline4, greville_abscissae

SMALL = MeshParams(N=16, layers=(2, 2))


def cylinder(length: float = 10.0, radius: float = 1.0, n: int = 6) -> Spline4:
    x = length * greville_abscissae(n)
    return Spline4(np.column_stack([x, np.zeros(n), np.zeros(n), np.full(n, radius)]))


def ring_arc(major: float, radius: float, n: int = 40) -> Spline4:
    phi = np.linspace(0.0, np.pi / 2, n)
    return Spline4(np.column_stack([major * np.cos(phi), major * np.sin(phi), np.zeros(n), np.full(n, radius)]))


def open_edges(surface: StructuredSurfaceMesh) -> int:
    quads, _, _ = surface.quads()
    pairs = np.vstack([quads[:, [0, 1]], quads[:, [1, 2]], quads[:, [2, 3]], quads[:, [3, 0]]])
    _, counts = np.unique(np.sort(pairs, axis=1), axis=0, return_counts=True)
    return int(np.sum(counts == 1))


def expected_cells(surface: StructuredSurfaceMesh, params: MeshParams) -> int:
    _, cells_per_section = expected_counts(params.N, params.n_alpha, params.n_beta)
    return sum(len(patch.sections) - 1 for patch in surface.patches) * cells_per_section


class TestParams(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Mesher MeshParams **")

    def test_validation(self):
        # Test invalid parameter combinations
        with self.assertRaises(ConfigError):
            MeshParams(N=18)
        with self.assertRaises(ConfigError):
            MeshParams(ogrid=(0.2, 0.3, 0.4))
        with self.assertRaises(ConfigError):
            MeshParams(layers=(0, 3))
        with self.assertRaises(ConfigError):
            MeshParams(init_mode="spiral")
        self.assertTrue(MeshParams(N=16).splittable)
        self.assertFalse(MeshParams(N=12).splittable)


class TestTemplate(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Mesher OGridTemplate **")

    def test_counts(self):
        # Test node and cell counts against the closed forms
        for N, n_alpha, n_beta in ((8, 1, 1), (16, 2, 3), (24, 10, 10)):
            template = ogrid_template(N, n_alpha, n_beta, 0.2, 0.3, 0.5)
            self.assertEqual((template.node_count, template.cell_count), expected_counts(N, n_alpha, n_beta))

    def test_geometry(self):
        # Test the wall ring sits on the unit circle and the core inside gamma
        template = ogrid_template(16, 2, 2, 0.2, 0.3, 0.5)
        radius, _ = template.polar
        np.testing.assert_allclose(radius[:16], 1.0)
        self.assertTrue(np.all(radius[template.layers * 16:] <= 0.5 + 1e-12))

    def test_mirror(self):
        # Test the mirror permutation is an involution
        template = ogrid_template(16, 2, 2, 0.2, 0.3, 0.5)
        perm = template.mirror()
        np.testing.assert_array_equal(perm[perm], np.arange(template.node_count))
        np.testing.assert_allclose(template.coords[perm, 1], -template.coords[:, 1], atol=1e-12)
        with self.assertRaises(ValueError):
            ogrid_template(12, 2, 2, 0.2, 0.3, 0.5).mirror()

    def test_core_fill(self):
        # Test the core block is the transfinite fill of its rounded boundary
        template = ogrid_template(24, 10, 10, 0.2, 0.3, 0.5)
        grid = template.coords[template.grid]
        np.testing.assert_allclose(transfinite(grid), grid, atol=1e-12)
        boundary = np.linalg.norm(template.coords[20 * 24 : 21 * 24], axis=1)
        self.assertTrue(np.all(boundary > 0.5 / np.sqrt(2.0)))
        self.assertTrue(np.all(boundary <= 0.5 + 1e-12))
        corners = template.grid[[0, 0, -1, -1], [0, -1, 0, -1]]
        np.testing.assert_allclose(np.linalg.norm(template.coords[corners], axis=1), 0.5)
        np.testing.assert_allclose(template.coords[template.grid[1:-1, 3], 1], 0.0, atol=1e-12)

    def test_transfinite(self):
        # Test a bilinear lattice is rebuilt from its sides alone
        s, t = np.meshgrid(np.linspace(0.0, 1.0, 5), np.linspace(0.0, 1.0, 4), indexing="ij")
        lattice = np.stack([s + 0.3 * s * t, t - 0.2 * s * t, 0.5 * s * t], axis=-1)
        sides = lattice.copy()
        sides[1:-1, 1:-1] = 0.0
        np.testing.assert_allclose(transfinite(sides), lattice, atol=1e-12)


class TestVesselMesh(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Mesher Vessel **")
        self.surface = mesh_vessel_surface(cylinder(), SMALL)

    def test_sections(self):
        # Test section spacing and node placement on a cylinder
        surface = self.surface
        sections = surface.patches[0].sections
        self.assertEqual(len(sections), 51)
        self.assertEqual(surface.node_count, 51 * 16)
        nodes = surface.nodes
        np.testing.assert_allclose(np.linalg.norm(nodes[:, 1:], axis=1), 1.0, atol=1e-9)
        centers = np.array([s.center for s in sections])
        np.testing.assert_allclose(np.diff(centers[:, 0]), 0.2, atol=1e-4)

    def test_quads(self):
        # Test quad count, labels and the two open rings
        quads, labels, kinds = self.surface.quads()
        self.assertEqual(quads.shape, (50 * 16, 4))
        self.assertTrue(np.all(labels == 0))
        self.assertTrue(np.all(kinds == 0))
        self.assertEqual(open_edges(self.surface), 2 * 16)
        report = surface_quality_report(self.surface)
        self.assertGreater(report.minimum, 0.99)

    def test_volume(self):
        # Test the O-grid volume of a cylinder
        volume = build_ogrid_volume(self.surface, SMALL)
        _, cells_per_section = expected_counts(16, 2, 2)
        self.assertEqual(volume.cell_count, 50 * cells_per_section)
        self.assertEqual(len(volume.boundary_faces()), 50 * 16 + 2 * cells_per_section)
        self.assertEqual(set(volume.layer.tolist()), {0, 1, 2})
        report = quality_report(volume)
        self.assertGreater(report.minimum, 0.0)
        self.assertEqual(report.failed_branches, [])
        self.assertEqual(set(volume.branch_labels()), {"vessel:0"})

    def test_mismatched_n(self):
        # Test the volume refuses a different N
        with self.assertRaises(ConsistencyError):
            build_ogrid_volume(self.surface, MeshParams(N=24))

    def test_torus_arc_volume(self):
        # Test a bent vessel at curvature * radius 0.5 gives a conforming volume
        surface = mesh_vessel_surface(ring_arc(2.0, 1.0), SMALL)
        volume = build_ogrid_volume(surface, SMALL)
        _, cells_per_section = expected_counts(16, 2, 2)
        self.assertEqual(open_edges(surface), 2 * 16)
        self.assertEqual(volume.cell_count, expected_cells(surface, SMALL))
        self.assertEqual(len(volume.boundary_faces()), len(surface.quads()[0]) + 2 * cells_per_section)
        self.assertEqual(quality_report(volume).fraction_positive, 1.0)

    def test_fold_over(self):
        # Test a radius larger than the curvature radius
        mesh_vessel_surface(ring_arc(5.0, 1.0), SMALL)
        with self.assertRaises(FoldOverError) as ctx:
            mesh_vessel_surface(ring_arc(0.8, 1.0), SMALL)
        self.assertEqual(ctx.exception.reason, "too high curvature")


class TestApex(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Mesher Apex **")

    def test_fillet(self):
        # Test the corner vertex moves onto the rolling circle
        points = np.array([[-3, 0], [-2, 0], [-1, 0], [0, 0], [0, 1], [0, 2], [0, 3]], dtype=float)
        out = fillet_polyline_2d(points, 3, 0.5)
        self.assertAlmostEqual(float(np.linalg.norm(out[3] - [-0.5, 0.5])), 0.5)
        np.testing.assert_allclose(np.delete(out, 3, axis=0), np.delete(points, 3, axis=0))
        np.testing.assert_allclose(fillet_polyline_2d(points, 3, 0.0), points)
        self.assertIsNone(fillet_polyline_2d(points, 0, 0.5))


class TestFurcationSurface(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Mesher FurcationSurface **")
        model = assemble_network(y_network())
        self.furcation = next(iter(model.furcations.values()))
        self.tubes = TubeSurface(self.furcation.splines)
        self.sep = decompose_furcation(self.furcation, SMALL)
        self.surface = mesh_furcation_surface(self.furcation, self.sep, SMALL)

    def test_separation_arcs(self):
        # Test one arc per outlet gap plus the two outer arcs, all on the wall
        self.assertEqual(self.sep.plan_count, 3)
        ct0, ct1 = self.sep.center_points
        for arc in self.sep.arcs:
            self.assertEqual(arc.shape, (9, 3))
            np.testing.assert_allclose(arc[0], ct0)
            np.testing.assert_allclose(arc[-1], ct1)
            np.testing.assert_allclose(self.tubes.signed_distance(arc), 0.0, atol=1e-3)
        self.assertLess(self.tubes.signed_distance(self.sep.center[None, :])[0], 0.0)

    def test_patches(self):
        # Test the inlet and both outlet patches close up except at their ends
        self.assertEqual(len(self.surface.patches), 3)
        self.assertEqual(open_edges(self.surface), 3 * 16)
        self.assertEqual(len(self.surface.arcs), 3)

    def test_relax(self):
        # Test relaxation keeps pinned nodes, arc planes and the wall
        relaxed = relax_surface(self.surface, self.furcation, SMALL)
        self.assertEqual(relaxed.node_count, self.surface.node_count)
        pinned = sorted(self.surface.pinned)
        np.testing.assert_allclose(relaxed.nodes[pinned], self.surface.nodes[pinned])
        for arc in relaxed.arcs.values():
            offsets = relaxed.nodes[arc.node_ids] - arc.center
            np.testing.assert_allclose(offsets @ arc.plane_normal, 0.0, atol=1e-6)
        np.testing.assert_allclose(self.tubes.signed_distance(relaxed.nodes), 0.0, atol=1e-2)
        self.assertEqual(relaxed.quads()[0].shape, self.surface.quads()[0].shape)


class TestNetworkMesh(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Mesher NetworkMesh **")
        self.model = assemble_network(y_network())
        self.mesh = mesh_network(self.model, SMALL)

    def test_parts(self):
        # Test every furcation and vessel was meshed
        self.assertEqual(self.mesh.failures, [])
        self.assertEqual(self.mesh.vessels, [0, 1, 2])
        self.assertEqual(self.mesh.furcations, sorted(self.model.furcations))
        self.assertIn("surface", self.mesh.timings)
        self.assertIn("volume", self.mesh.timings)

    def test_watertight(self):
        # Test only the three open ends are boundary edges of the surface
        self.assertEqual(open_edges(self.mesh.surface), 3 * 16)

    def test_conforming_volume(self):
        # Test the volume boundary is the wall plus three end caps
        volume = self.mesh.volume
        _, cells_per_section = expected_counts(16, 2, 2)
        quads, _, kinds = self.mesh.surface.quads()
        self.assertEqual(len(volume.boundary_faces()), len(quads) + 3 * cells_per_section)
        self.assertEqual(set(volume.branch_kind.tolist()), {0, 1})
        self.assertTrue(np.any(kinds == 1))

    def test_surface_only(self):
        # Test the volume step can be skipped
        mesh = mesh_network(self.model, SMALL, surface_only=True)
        self.assertIsNone(mesh.volume)
        self.assertNotIn("volume", mesh.timings)

    def test_unexpected_errors_propagate(self):
        # Test only meshing errors become failure records
        with mock.patch("vesselforge.mesher.network_mesher.mesh_vessel_surface", side_effect=RuntimeError("bug")):
            with self.assertRaises(RuntimeError):
                mesh_network(self.model, SMALL, surface_only=True)


class TestTrifurcationMesh(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Mesher Trifurcation **")
        self.mesh = mesh_network(assemble_network(trifurcation_network()), SMALL)

    def test_conforming_volume(self):
        # Test four open ends, the closed cell count and no inverted cells
        mesh = self.mesh
        self.assertEqual(mesh.failures, [])
        self.assertEqual(mesh.vessels, [0, 1, 2, 3])
        self.assertEqual(open_edges(mesh.surface), 4 * 16)
        _, cells_per_section = expected_counts(16, 2, 2)
        self.assertEqual(mesh.volume.cell_count, expected_cells(mesh.surface, SMALL))
        self.assertEqual(len(mesh.volume.boundary_faces()), len(mesh.surface.quads()[0]) + 4 * cells_per_section)
        self.assertEqual(quality_report(mesh.volume).fraction_positive, 1.0)


class TestDefaultFurcation(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Mesher DefaultFurcation **")
        self.params = MeshParams()
        self.model = assemble_network(y_network())
        self.furcation = next(iter(self.model.furcations.values()))
        self.tubes = TubeSurface(self.furcation.splines)

    def test_cell_quality(self):
        # Test the share of cells with a scaled Jacobian above 0.9 per region
        mesh = mesh_network(self.model, self.params)
        self.assertEqual(mesh.failures, [])
        values = quality_report(mesh.volume).values
        kinds = mesh.volume.branch_kind
        self.assertGreaterEqual(np.mean(values[kinds == 1] > 0.9), 0.71)
        self.assertGreaterEqual(np.mean(values[kinds == 0] > 0.9), 0.95)
        self.assertGreater(np.min(values), 0.0)

    def test_relaxation_gain(self):
        # Test more relaxation iterations do not lower the surface quality and stay on the wall
        sep = decompose_furcation(self.furcation, self.params)
        surface = mesh_furcation_surface(self.furcation, sep, self.params)
        once = relax_surface(surface, self.furcation, self.params.replace(relax_iters=1))
        five = relax_surface(surface, self.furcation, self.params.replace(relax_iters=5))
        self.assertGreaterEqual(surface_quality_report(five).mean, surface_quality_report(once).mean)
        free = np.array(sorted(set(range(five.node_count)) - set(five.pinned)))
        deviation = np.abs(self.tubes.signed_distance(five.nodes[free]))
        self.assertLess(np.max(deviation), 1e-3 * 0.8)

    def test_apex_locality(self):
        # Test apex smoothing leaves nodes away from the apex in place
        R = 0.2 * 0.8
        plain = mesh_furcation(self.furcation, self.params.replace(smooth_apex=False))
        smooth = mesh_furcation(self.furcation, self.params.replace(apex_R=R))
        moved = np.linalg.norm(smooth.nodes - plain.nodes, axis=1)
        self.assertGreater(np.max(moved), 0.0)
        last = len(plain.arcs) - 1
        apex = np.vstack([plain.nodes[arc.node_ids[1:-1]] for key, arc in plain.arcs.items() if 0 < key[2] < last])
        distance = np.min(np.linalg.norm(plain.nodes[:, None, :] - apex[None, :, :], axis=2), axis=1)
        self.assertLess(np.max(moved[distance > 3.0 * R]), 1e-9)


class TestExporters(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Mesher Exporters **")
        self.surface = mesh_vessel_surface(cylinder(length=2.0), SMALL)
        self.volume = build_ogrid_volume(self.surface, SMALL)

    def test_vtk_hex(self):
        # Test hexahedra and their cell arrays are written
        with temp_dir() as tmp:
            path = Path(tmp) / "volume.vtk"
            write_vtk_hex(path, self.volume, {"scaled_jacobian": np.ones(self.volume.cell_count)})
            data = read_vtk_cells(path)
            text = path.read_text(encoding="UTF-8")
        self.assertTrue(text.startswith("# vtk DataFile Version 3.0"))
        np.testing.assert_array_equal(data["cells"], self.volume.hexes)
        self.assertTrue(np.all(data["cell_types"] == VTK_HEXAHEDRON))
        np.testing.assert_array_equal(data["layer"], self.volume.layer)
        np.testing.assert_allclose(data["scaled_jacobian"], 1.0)
        np.testing.assert_allclose(data["points"], self.volume.vertices, atol=1e-8)

    def test_vtk_quads_and_obj(self):
        # Test the surface writers
        quads, _, _ = self.surface.quads()
        with temp_dir() as tmp:
            vtk_path, obj_path = Path(tmp) / "surface.vtk", Path(tmp) / "surface.obj"
            write_vtk_quads(vtk_path, self.surface)
            write_obj_quads(obj_path, self.surface)
            data = read_vtk_cells(vtk_path)
            lines = obj_path.read_text(encoding="UTF-8").splitlines()
        self.assertTrue(np.all(data["cell_types"] == VTK_QUAD))
        self.assertEqual(len(data["cells"]), len(quads))
        self.assertEqual(sum(line.startswith("v ") for line in lines), self.surface.node_count)
        self.assertEqual(sum(line.startswith("f ") for line in lines), len(quads))

    def test_deterministic(self):
        # Test the same mesh gives the same bytes
        with temp_dir() as tmp:
            a, b = Path(tmp) / "a.vtk", Path(tmp) / "b.vtk"
            write_vtk_hex(a, self.volume)
            write_vtk_hex(b, self.volume)
            self.assertEqual(a.read_bytes(), b.read_bytes())

    def test_empty_mesh(self):
        # Test an empty volume still writes a valid header
        with temp_dir() as tmp:
            path = Path(tmp) / "empty.vtk"
            write_vtk_hex(path, HexMesh())
            self.assertIn("CELLS 0 0", path.read_text(encoding="UTF-8"))


if __name__ == "__main__":
    unittest.main()
