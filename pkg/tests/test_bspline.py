import unittest
import warnings

import numpy as np

from vesselforge.errors import SplineError
from vesselforge.spline import (
    CurveProjector,
    Spline4,
    SplineD,
    arc_length_table,
    chord_length_parametrize,
    clamped_uniform_knots,
    collapse_duplicates,
    design_matrix,
    greville_abscissae,
    perpendicular,
    project_point,
    rotation_minimizing_frames,
    signed_angle,
)


def line_spline(length: float = 10.0, n: int = 6) -> Spline4:
    # control points at the Greville abscissae give x(u) = length * u
    x = length * greville_abscissae(n)
    return Spline4(np.column_stack([x, np.zeros(n), np.zeros(n), np.ones(n)]))


def arc_spline(radius: float = 5.0, n: int = 40) -> SplineD:
    # control points on a circle approximate the circle closely
    phi = np.linspace(0.0, np.pi / 2, n)
    return SplineD(np.column_stack([radius * np.cos(phi), radius * np.sin(phi), np.zeros(n)]))


class TestBasis(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Spline Basis **")

    def test_knots(self):
        # Test clamped uniform knot vector
        knots = clamped_uniform_knots(6)
        np.testing.assert_allclose(knots, [0, 0, 0, 0, 1 / 3, 2 / 3, 1, 1, 1, 1])
        with self.assertRaises(SplineError):
            clamped_uniform_knots(3)

    def test_partition_of_unity(self):
        # Test basis rows sum to one
        matrix = design_matrix(np.linspace(0, 1, 17), 8)
        self.assertEqual(matrix.shape, (17, 8))
        np.testing.assert_allclose(matrix.sum(axis=1), 1.0)

    def test_greville(self):
        # Test Greville abscissae are increasing and span [0, 1]
        g = greville_abscissae(7)
        self.assertEqual(g[0], 0.0)
        self.assertEqual(g[-1], 1.0)
        self.assertTrue(np.all(np.diff(g) > 0))


class TestSpline(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Spline Evaluation **")

    def test_interpolates_ends(self):
        # Test clamped curves pass through the end control points
        spline = line_spline()
        np.testing.assert_allclose(spline.evaluate(0.0), [0, 0, 0, 1])
        np.testing.assert_allclose(spline.evaluate(1.0), [10, 0, 0, 1])

    def test_derivatives(self):
        # Test derivatives of a linear control sequence
        spline = line_spline()
        np.testing.assert_allclose(spline.evaluate(0.3, 1), [10, 0, 0, 0], atol=1e-9)
        np.testing.assert_allclose(spline.evaluate(0.3, 2), [0, 0, 0, 0], atol=1e-8)
        np.testing.assert_allclose(spline.tangent(0.5), [1, 0, 0])
        with self.assertRaises(SplineError):
            spline.evaluate(0.5, 3)

    def test_out_of_range(self):
        # Test evaluate rejects parameters outside [0, 1]
        spline = line_spline()
        with self.assertRaises(SplineError):
            spline.evaluate(1.5)
        with self.assertRaises(SplineError):
            spline.evaluate(-0.1)
        # the vectorised call clips instead
        np.testing.assert_allclose(spline(1.5), spline(1.0))

    def test_length_and_curvature(self):
        # Test arc length and curvature of a quarter circle
        spline = arc_spline()
        self.assertAlmostEqual(spline.length, np.pi * 5.0 / 2, delta=1e-2)
        np.testing.assert_allclose(spline.curvature(np.linspace(0.2, 0.8, 5)), 1 / 5.0, rtol=1e-2)
        np.testing.assert_allclose(line_spline().curvature([0.1, 0.5]), 0.0, atol=1e-12)

    def test_length_to_u(self):
        # Test walking along the curve by arc length
        spline = line_spline()
        self.assertAlmostEqual(spline.length_to_u(0.0, 5.0), 0.5, places=9)
        self.assertAlmostEqual(spline.length_to_u(0.5, -2.5), 0.25, places=9)
        with self.assertRaises(SplineError):
            spline.length_to_u(0.5, 6.0)
        arc = arc_spline()
        u = arc.length_to_u(0.1, 3.0)
        self.assertAlmostEqual(arc.arc_length(0.1, u), 3.0, places=8)
        self.assertAlmostEqual(arc.length_to_u(u, -3.0), 0.1, places=8)

    def test_arc_length_table(self):
        # Test the cumulative table is monotone and ends at the curve length
        for spline in (line_spline(), arc_spline()):
            u, s = arc_length_table(spline)
            self.assertEqual((u[0], u[-1], s[0]), (0.0, 1.0, 0.0))
            self.assertTrue(np.all(np.diff(s) > 0.0))
            self.assertAlmostEqual(s[-1], spline.length, places=5)

    def test_project(self):
        # Test closest point queries
        spline = line_spline()
        u, distance = spline.project([4.0, 3.0, 0.0])
        self.assertAlmostEqual(u, 0.4, places=8)
        self.assertAlmostEqual(distance, 3.0, places=8)
        u, distance = project_point(spline, [-2.0, 0.0, 0.0])
        self.assertEqual(u, 0.0)
        self.assertAlmostEqual(distance, 2.0)

    def test_projector(self):
        # Test the batch projector agrees with single queries
        spline = arc_spline()
        queries = np.array([[6.0, 1.0, 0.0], [1.0, 4.0, 0.5], [3.0, 3.0, 0.0]])
        u, distance = CurveProjector(spline).project(queries)
        for q, ui, di in zip(queries, u, distance):
            expected_u, expected_d = spline.project(q)
            self.assertAlmostEqual(ui, expected_u, places=6)
            self.assertAlmostEqual(di, expected_d, places=6)

    def test_serialization(self):
        # Test dict conversion keeps the control points
        spline = line_spline()
        data = spline.to_dict()
        self.assertEqual(data["degree"], 3)
        self.assertEqual(len(data["knots"]), spline.n + 4)
        self.assertEqual(Spline4.from_dict(data), spline)

    def test_spline4_needs_four_coordinates(self):
        # Test dimension check
        with self.assertRaises(SplineError):
            Spline4(np.zeros((5, 3)))


class TestParametrization(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Spline Parametrization **")

    def test_chord_length(self):
        # Test normalised cumulative chord length
        points = np.array([[0, 0, 0, 1], [1, 0, 0, 1], [3, 0, 0, 1]], dtype=float)
        np.testing.assert_allclose(chord_length_parametrize(points), [0, 1 / 3, 1])

    def test_duplicates(self):
        # Test duplicates are dropped with a warning
        points = np.array([[0, 0, 0, 1], [0, 0, 0, 2], [1, 0, 0, 1]], dtype=float)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            kept, mask = collapse_duplicates(points)
        self.assertEqual(len(kept), 2)
        self.assertEqual(mask.tolist(), [True, False, True])
        self.assertTrue(caught)

    def test_degenerate(self):
        # Test coincident or single points are rejected
        with self.assertRaises(SplineError):
            chord_length_parametrize(np.zeros((1, 4)))
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            with self.assertRaises(SplineError):
                chord_length_parametrize(np.zeros((3, 4)))


class TestFrames(unittest.TestCase):
    @classmethod
    def setUpClass(self):
        print("\n** Testing Spline Frames **")

    def test_perpendicular(self):
        # Test orthogonality and unit length
        for vector in ([1, 0, 0], [0.3, -2, 5], [0, 0, -1]):
            p = perpendicular(np.array(vector, dtype=float))
            self.assertAlmostEqual(float(p @ vector), 0.0)
            self.assertAlmostEqual(float(np.linalg.norm(p)), 1.0)

    def test_rotation_minimizing(self):
        # Test frames along a straight line do not twist
        positions = np.column_stack([np.linspace(0, 5, 11), np.zeros(11), np.zeros(11)])
        tangents = np.tile([1.0, 0.0, 0.0], (11, 1))
        frames = rotation_minimizing_frames(positions, tangents, np.array([0.0, 1.0, 1.0]))
        np.testing.assert_allclose(frames, np.tile([0.0, 1.0, 1.0] / np.sqrt(2), (11, 1)))

    def test_signed_angle(self):
        # Test the sign follows the right-hand rule
        z = np.array([0.0, 0.0, 1.0])
        self.assertAlmostEqual(signed_angle(np.array([1.0, 0, 0]), np.array([0, 1.0, 0]), z), np.pi / 2)
        self.assertAlmostEqual(signed_angle(np.array([0, 1.0, 0]), np.array([1.0, 0, 0]), z), -np.pi / 2)


if __name__ == "__main__":
    unittest.main()
