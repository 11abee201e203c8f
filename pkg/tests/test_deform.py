import unittest
from pathlib import Path

import numpy as np
import trimesh

from tests.fixtures import temp_dir
from vesselforge.deform import TargetSurface, project_nodes, project_surface_nodes, rebuild_volume_after_deform
from vesselforge.errors import DeformError
from vesselforge.mesher import MeshParams, build_ogrid_volume, mesh_vessel_surface
from vesselforge.quality import quality_report
from vesselforge.spline import Spline4, greville_abscissae

PARAMS = MeshParams(N=16, layers=(2, 2))


def tube_surface(length: float = 10.0, radius: float = 1.0):
    x = length * greville_abscissae(6)
    spline = Spline4(np.column_stack([x, np.zeros(6), np.zeros(6), np.full(6, radius)]))
    return mesh_vessel_surface(spline, PARAMS)


def x_cylinder(radius: float, height: float = 30.0, center: float = 5.0) -> trimesh.Trimesh:
    """Closed triangulated cylinder along the x axis."""
    transform = trimesh.transformations.rotation_matrix(np.pi / 2, [0.0, 1.0, 0.0])
    transform[:3, 3] = [center, 0.0, 0.0]
    return trimesh.creation.cylinder(radius=radius, height=height, sections=128, transform=transform)


def x_elliptic_cylinder(a: float, b: float) -> trimesh.Trimesh:
    """Unit cylinder along x stretched to semi-axes ``a`` along y and ``b`` along z."""
    mesh = x_cylinder(1.0)
    mesh.apply_transform(np.diag([1.0, a, b, 1.0]))
    return mesh


def triangulate(surface) -> TargetSurface:
    quads, _, _ = surface.quads()
    return TargetSurface.from_arrays(surface.nodes, np.vstack([quads[:, [0, 1, 2]], quads[:, [0, 2, 3]]]))


class TestTargetSurface(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Deform TargetSurface **")

    def test_first_hits(self):
        # Test the nearest hit in front of the origin wins
        target = TargetSurface(trimesh.creation.box(extents=(2.0, 2.0, 2.0)))
        origins = np.tile([0.1, 0.2, 0.3], (3, 1))
        directions = np.array([[1.0, 0, 0], [0, 0, -3.0], [0, 1.0, 0]])
        points, hit = target.first_hits(origins, directions)
        self.assertTrue(np.all(hit))
        np.testing.assert_allclose(points, [[1, 0.2, 0.3], [0.1, 0.2, -1], [0.1, 1, 0.3]], atol=1e-9)

    def test_miss(self):
        # Test rays pointing away from a surface keep their origin
        target = TargetSurface.from_arrays([[0, 0, 5], [1, 0, 5], [0, 1, 5]], [[0, 1, 2]])
        points, hit = target.first_hits([[0.2, 0.2, 0.0], [0.2, 0.2, 0.0]], [[0, 0, 1.0], [0, 0, -1.0]])
        self.assertEqual(hit.tolist(), [True, False])
        np.testing.assert_allclose(points, [[0.2, 0.2, 5.0], [0.2, 0.2, 0.0]], atol=1e-9)

    def test_load(self):
        # Test STL and OBJ files and unsupported inputs
        mesh = trimesh.creation.icosphere(subdivisions=2, radius=2.0)
        with temp_dir() as tmp:
            for suffix in (".stl", ".obj"):
                path = Path(tmp) / f"target{suffix}"
                mesh.export(str(path))
                self.assertEqual(len(TargetSurface.load(path).mesh.faces), len(mesh.faces))
            with self.assertRaises(DeformError):
                TargetSurface.load(Path(tmp) / "target.ply")
            with self.assertRaises(DeformError):
                TargetSurface.load(Path(tmp) / "missing.stl")
        with self.assertRaises(DeformError):
            TargetSurface(trimesh.Trimesh())


class TestProjection(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Deform Projection **")
        self.surface = tube_surface()

    def test_inflate(self):
        # Test a wider cylinder pushes every node outwards
        target = TargetSurface(x_cylinder(1.5))
        points, hit = project_nodes(self.surface, target)
        self.assertTrue(np.all(hit))
        radii = np.linalg.norm(points[:, 1:], axis=1)
        self.assertTrue(np.all(radii > 1.5 * np.cos(np.pi / 128) - 1e-9))
        self.assertTrue(np.all(radii < 1.5 + 1e-9))
        np.testing.assert_allclose(points[:, 0], self.surface.nodes[:, 0], atol=1e-9)

    def test_connectivity_kept(self):
        # Test the deformed mesh keeps its quads and rebuilds a valid volume
        deformed = project_surface_nodes(self.surface, TargetSurface(x_cylinder(0.8)))
        np.testing.assert_array_equal(deformed.quads()[0], self.surface.quads()[0])
        self.assertEqual(deformed.node_count, self.surface.node_count)
        before = build_ogrid_volume(self.surface, PARAMS)
        after = rebuild_volume_after_deform(deformed, PARAMS)
        np.testing.assert_array_equal(after.hexes, before.hexes)
        self.assertGreater(quality_report(after).minimum, 0.0)
        np.testing.assert_allclose(self.surface.nodes[:, 1:].max(), 1.0, atol=1e-9)

    def test_elliptic_target(self):
        # Test nodes land on an elliptic cylinder along their own rays
        deformed = project_surface_nodes(self.surface, TargetSurface(x_elliptic_cylinder(1.4, 0.7)))
        y, z = deformed.nodes[:, 1], deformed.nodes[:, 2]
        level = np.sqrt((y / 1.4) ** 2 + (z / 0.7) ** 2)
        self.assertTrue(np.all(level > np.cos(np.pi / 128) - 1e-9))
        self.assertTrue(np.all(level < 1.0 + 1e-9))
        before = np.arctan2(self.surface.nodes[:, 2], self.surface.nodes[:, 1])
        after = np.arctan2(z, y)
        np.testing.assert_allclose(np.cos(after - before), 1.0, atol=1e-9)
        np.testing.assert_allclose(deformed.nodes[:, 0], self.surface.nodes[:, 0], atol=1e-9)
        self.assertGreater(quality_report(rebuild_volume_after_deform(deformed, PARAMS)).minimum, 0.0)

    def test_idempotent(self):
        # Test projecting onto the own triangulation, or twice onto one target, moves nothing
        same = project_surface_nodes(self.surface, triangulate(self.surface), miss_tolerance=1.0)
        np.testing.assert_allclose(same.nodes, self.surface.nodes, atol=1e-9)
        target = TargetSurface(x_elliptic_cylinder(1.4, 0.7))
        once = project_surface_nodes(self.surface, target)
        twice = project_surface_nodes(once, target)
        np.testing.assert_allclose(twice.nodes, once.nodes, atol=1e-9)

    def test_misses(self):
        # Test too many misses fail and a loose tolerance keeps the nodes
        sphere = trimesh.creation.icosphere(radius=0.5)
        sphere.apply_translation([100.0, 0.0, 0.0])
        far = TargetSurface(sphere)
        with self.assertRaises(DeformError):
            project_surface_nodes(self.surface, far)
        kept = project_surface_nodes(self.surface, far, miss_tolerance=1.0)
        np.testing.assert_allclose(kept.nodes, self.surface.nodes)


if __name__ == "__main__":
    unittest.main()
