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
from dudf.core import AnalyticShape, OpenDisk, Plane, Sphere, Torus
from test.unittest_base import UnittestBase


class TestShapes(UnittestBase, unittest.TestCase):

    def test_create(self):
        self.start_tests(name='create')

        self.assertIsInstance(AnalyticShape.create('sphere'), Sphere)
        torus = AnalyticShape.create(dict(type='torus', major_radius=0.6, minor_radius=0.1))
        self.assertIsInstance(torus, Torus)
        self.assertEqual(torus.major_radius, 0.6)
        disk = OpenDisk(radius=0.3)
        self.assertIs(AnalyticShape.create(disk), disk)

        with self.assertRaises(DudfError):
            AnalyticShape.create('cube')
        with self.assertRaises(DudfError):
            Sphere(radius=1.5)
        with self.assertRaises(DudfError):
            Torus(major_radius=0.2, minor_radius=0.3)
        with self.assertRaises(DudfError):
            OpenDisk(normal=(0.0, 0.0, 2.0))

        self.finished_test()

    def test_sphere(self):
        self.start_tests(name='sphere')

        sphere = Sphere(radius=0.5)
        distances, footpoints, normals = sphere.closest(
            np.array([[0.0, 0.0, 0.9], [0.1, 0.0, 0.0], [0.0, 0.0, 0.0]])
        )
        self.assertTrue(np.allclose(distances, (0.4, 0.4, 0.5)))
        self.assertTrue(np.allclose(footpoints[0], (0.0, 0.0, 0.5)))
        self.assertTrue(np.allclose(footpoints[1], (0.5, 0.0, 0.0)))
        self.assertTrue(np.allclose(np.linalg.norm(normals, axis=1), 1.0))

        self.finished_test()

    def test_torus(self):
        self.start_tests(name='torus')

        torus = Torus(major_radius=0.5, minor_radius=0.2)
        distances, footpoints, _ = torus.closest(
            np.array([[0.9, 0.0, 0.0], [0.0, 0.5, 0.1], [0.0, 0.0, 0.0]])
        )
        self.assertTrue(np.allclose(distances, (0.2, 0.1, 0.3)))
        self.assertTrue(np.allclose(footpoints[0], (0.7, 0.0, 0.0)))
        medial = torus.medial_distance(np.array([[0.5, 0.0, 0.0], [0.0, 0.0, 0.3]]))
        self.assertTrue(np.allclose(medial, 0.0))

        self.finished_test()

    def test_open_disk(self):
        self.start_tests(name='open-disk')

        disk = OpenDisk(radius=0.5)
        distances, footpoints, normals = disk.closest(
            np.array([[0.1, 0.2, -0.3], [0.8, 0.0, 0.4], [0.5, 0.0, 0.0]])
        )
        self.assertTrue(np.allclose(distances, (0.3, 0.5, 0.0)))
        self.assertTrue(np.allclose(footpoints[1], (0.5, 0.0, 0.0)))
        self.assertTrue(np.allclose(normals, (0.0, 0.0, 1.0)))

        self.finished_test()

    def test_plane(self):
        self.start_tests(name='plane')

        plane = Plane(normal=(0.0, 1.0, 0.0), point=(0.0, 0.2, 0.0))
        distances, footpoints, _ = plane.closest(np.array([[3.0, -0.3, 1.0]]))
        self.assertTrue(np.allclose(distances, 0.5))
        self.assertTrue(np.allclose(footpoints, (3.0, 0.2, 1.0)))
        self.assertTrue(np.isinf(plane.medial_distance(footpoints)[0]))
        with self.assertRaises(DudfError):
            plane.sample_surface(n=10, rng=np.random.default_rng(seed=0))

        self.finished_test()

    def test_sample_surface(self):
        self.start_tests(name='sample-surface')

        for name, shape in self.shapes().items():
            rng = np.random.default_rng(seed=2)
            positions, normals = shape.sample_surface(n=500, rng=rng)
            self.assertEqual(positions.shape, (500, 3))
            distances, _, footnormals = shape.closest(positions)
            self.assertLess(distances.max(), 1e-12, msg=name)
            self.assertTrue(np.allclose(np.linalg.norm(normals, axis=1), 1.0), msg=name)
            alignment = np.abs(np.einsum('bi,bi->b', normals, footnormals))
            self.assertTrue(np.allclose(alignment, 1.0), msg=name)
            self.assertLessEqual(np.abs(positions).max(), 1.0)

        # Reproducible for a fixed seed
        sphere = self.shapes()['sphere']
        first, _ = sphere.sample_surface(n=10, rng=np.random.default_rng(seed=3))
        second, _ = sphere.sample_surface(n=10, rng=np.random.default_rng(seed=3))
        self.assertTrue(np.array_equal(first, second))

        self.finished_test()
