# Copyright 2024 The DUDF Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ==============================================================================

import unittest

import numpy as np

from dudf import DudfError
from dudf.core import AnalyticField, OpenDisk, Torus
from dudf.rendering import curvatures, gaussian_curvature, mean_curvature, normal_jacobians
from test.unittest_base import UnittestBase


class TestCurvature(UnittestBase, unittest.TestCase):

    def test_sphere(self):
        self.start_tests(name='sphere')

        field = self.sphere_field()
        rng = np.random.default_rng(seed=0)
        points, _ = self.shapes()['sphere'].sample_surface(n=20, rng=rng)
        mean, gaussian, valid = curvatures(field, points)
        self.assertTrue(valid.all())
        self.assertTrue(np.allclose(mean, 2.0, rtol=1e-2))
        self.assertTrue(np.allclose(gaussian, 4.0, rtol=5e-2))

        self.assertAlmostEqual(mean_curvature(field, (0.0, 0.0, 0.5)), 2.0, delta=2e-2)
        self.assertAlmostEqual(gaussian_curvature(field, (0.0, 0.0, 0.5)), 4.0, delta=0.2)

        # Signed relative to a reference orientation
        self.assertAlmostEqual(
            mean_curvature(field, (0.0, 0.0, 0.5), orientation=(0.0, 0.0, 1.0)), 2.0, delta=2e-2
        )
        self.assertAlmostEqual(
            mean_curvature(field, (0.0, 0.0, 0.5), orientation=(0.0, 0.0, -1.0)), -2.0,
            delta=2e-2
        )

        self.finished_test()

    def test_flat(self):
        self.start_tests(name='flat')

        p = self.params()
        for shape in (self.plane(), OpenDisk(radius=0.5)):
            field = AnalyticField(shape=shape, params=p)
            mean, gaussian, valid = curvatures(
                field, np.array([[0.1, 0.2, 0.0], [-0.3, 0.1, 0.0]])
            )
            self.assertTrue(valid.all())
            self.assertTrue(np.allclose(mean, 0.0, atol=1e-6))
            self.assertTrue(np.allclose(gaussian, 0.0, atol=1e-6))

        self.finished_test()

    def test_torus(self):
        self.start_tests(name='torus')

        major, minor = 0.5, 0.2
        field = AnalyticField(
            shape=Torus(major_radius=major, minor_radius=minor), params=self.params()
        )
        points = np.array([[major + minor, 0.0, 0.0], [0.0, major - minor, 0.0]])
        mean, gaussian, valid = curvatures(field, points)
        self.assertTrue(valid.all())

        # Outer equator elliptic, inner equator hyperbolic
        outer = 1.0 / (minor * (major + minor))
        inner = -1.0 / (minor * (major - minor))
        self.assertAlmostEqual(gaussian[0] / outer, 1.0, delta=5e-2)
        self.assertAlmostEqual(gaussian[1] / inner, 1.0, delta=5e-2)
        self.assertAlmostEqual(mean[0], 0.5 * (1.0 / minor + 1.0 / (major + minor)), delta=5e-2)
        self.assertAlmostEqual(mean[1], 0.5 * (1.0 / minor - 1.0 / (major - minor)), delta=5e-2)

        self.finished_test()

    def test_orientation_invariance(self):
        self.start_tests(name='orientation-invariance')

        field = AnalyticField(shape=Torus(major_radius=0.5, minor_radius=0.2), params=self.params())
        points, normals = field.shape.sample_surface(n=10, rng=np.random.default_rng(seed=1))
        positive, jacobians, _ = normal_jacobians(field, points, orientation=normals)
        negative, flipped, _ = normal_jacobians(field, points, orientation=-normals)
        self.assertTrue(np.allclose(positive, -negative))
        self.assertTrue(np.allclose(jacobians, -flipped))
        self.assertTrue(np.all(np.einsum('bi,bi->b', positive, normals) > 0.0))

        mean, gaussian, _ = curvatures(field, points, orientation=normals)
        mean_flipped, gaussian_flipped, _ = curvatures(field, points, orientation=-normals)
        self.assertTrue(np.allclose(mean, -mean_flipped))
        self.assertTrue(np.allclose(gaussian, gaussian_flipped, rtol=1e-10))
        unsigned, _, _ = curvatures(field, points)
        self.assertTrue(np.allclose(unsigned, np.abs(mean)))

        self.finished_test()

    def test_degenerate(self):
        self.start_tests(name='degenerate')

        # Far from the plane the Hessian vanishes
        field = AnalyticField(shape=self.plane(), params=self.params())
        mean, gaussian, valid = curvatures(field, np.array([[0.0, 0.0, 0.5], [0.0, 0.0, 0.0]]))
        self.assertEqual(valid.tolist(), [False, True])
        self.assertTrue(np.isnan(mean[0]) and np.isnan(gaussian[0]))
        self.assertTrue(np.isnan(mean_curvature(field, (0.0, 0.0, 0.5))))

        with self.assertRaises(DudfError):
            curvatures(field, np.zeros((2, 3)), h=0.0)

        self.finished_test()
