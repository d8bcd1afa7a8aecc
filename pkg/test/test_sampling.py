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

import os
import tempfile
import unittest

import numpy as np

from dudf import DudfError, FormatError
from dudf.reconstruction import TriangleMesh
from dudf.sampling import approx_udf, build_index, cube_transform, load_cloud, load_points, \
    normalize_to_cube, OrientedPointCloud, sample_batch, sample_mesh_surface, SpatialIndex
from test.unittest_base import UnittestBase


class TestSampling(UnittestBase, unittest.TestCase):

    def sphere_cloud(self, n=500, seed=0):
        positions, normals = self.shapes()['sphere'].sample_surface(
            n=n, rng=np.random.default_rng(seed=seed)
        )
        return OrientedPointCloud(positions=positions, normals=normals)

    def write(self, directory, name, content):
        path = os.path.join(directory, name)
        with open(path, 'w') as filehandle:
            filehandle.write(content)
        return path

    def test_cloud(self):
        self.start_tests(name='cloud')

        cloud = OrientedPointCloud(positions=[[0.0, 0.0, 0.0]], normals=[[0.0, 0.0, 2.0]])
        self.assertTrue(np.array_equal(cloud.normals, [[0.0, 0.0, 1.0]]))
        self.assertEqual(len(cloud), 1)

        with self.assertRaises(DudfError):
            OrientedPointCloud(positions=np.zeros((0, 3)), normals=np.zeros((0, 3)))
        with self.assertRaises(DudfError):
            OrientedPointCloud(positions=np.zeros((2, 3)), normals=np.ones((1, 3)))
        with self.assertRaises(DudfError):
            OrientedPointCloud(positions=np.zeros((1, 3)), normals=np.zeros((1, 3)))
        with self.assertRaises(DudfError):
            OrientedPointCloud(positions=[[np.nan, 0.0, 0.0]], normals=[[1.0, 0.0, 0.0]])

        self.finished_test()

    def test_normalize(self):
        self.start_tests(name='normalize')

        positions = np.array([[1.0, 2.0, 3.0], [5.0, 3.0, 4.0], [3.0, 2.5, 3.5]])
        cloud = OrientedPointCloud(positions=positions, normals=np.ones((3, 3)))
        normalized, transform = normalize_to_cube(cloud, margin=0.1)
        self.assertTrue(np.allclose(normalized.positions.min(axis=0)[0], -0.9))
        self.assertTrue(np.allclose(normalized.positions.max(axis=0)[0], 0.9))
        self.assertTrue(np.allclose(normalized.positions[2], 0.0))
        self.assertTrue(np.allclose(transform.inverse(normalized.positions), positions))
        self.assertTrue(np.array_equal(normalized.normals, cloud.normals))

        other = cube_transform(positions, margin=0.0)
        self.assertAlmostEqual(other.scale, 0.5)
        with self.assertRaises(DudfError):
            cube_transform(np.ones((4, 3)))
        with self.assertRaises(DudfError):
            cube_transform(positions, margin=1.0)

        self.finished_test()

    def test_load(self):
        self.start_tests(name='load')

        with tempfile.TemporaryDirectory() as directory:
            path = self.write(
                directory, 'cloud.xyz', '# comment\n0 0 0.5 0 0 1\n\n0.5 0 0 2 0 0\n'
            )
            cloud = load_cloud(path)
            self.assertEqual(len(cloud), 2)
            self.assertTrue(np.allclose(cloud.normals[1], (1.0, 0.0, 0.0)))

            path = self.write(
                directory, 'cloud.obj',
                'v 0 0 0.5\nvn 0 0 1\nv 0.5 0 0\nvn 1 0 0\nf 1 2 1\n'
            )
            cloud = load_cloud(path)
            self.assertTrue(np.allclose(cloud.positions[1], (0.5, 0.0, 0.0)))

            path = self.write(directory, 'cloud.ply', '\n'.join([
                'ply', 'format ascii 1.0', 'comment test', 'element vertex 2',
                'property float nx', 'property float ny', 'property float nz', 'property float x',
                'property float y', 'property float z', 'end_header', '0 0 1 0 0 0.5',
                '1 0 0 0.5 0 0', ''
            ]))
            cloud = load_cloud(path)
            self.assertTrue(np.allclose(cloud.positions[0], (0.0, 0.0, 0.5)))
            self.assertTrue(np.allclose(cloud.normals[1], (1.0, 0.0, 0.0)))

            # Positions without normals
            path = self.write(directory, 'points.txt', '0 0 0\n1 2 3\n')
            positions, normals = load_points(path)
            self.assertEqual(positions.shape, (2, 3))
            self.assertIsNone(normals)
            with self.assertRaises(FormatError):
                load_cloud(path)
            path = self.write(directory, 'points.obj', 'v 0 0 0\nv 1 1 1\n')
            self.assertIsNone(load_points(path)[1])

            # Explicit format overrides the extension
            path = self.write(directory, 'points.dat', '0 0 0 0 1 0\n')
            self.assertEqual(len(load_cloud(path, format='xyz')), 1)
            with self.assertRaises(DudfError):
                load_cloud(path)

        self.finished_test()

    def test_load_errors(self):
        self.start_tests(name='load-errors')

        with tempfile.TemporaryDirectory() as directory:
            with self.assertRaises(DudfError):
                load_cloud(os.path.join(directory, 'missing.xyz'))

            path = self.write(directory, 'mixed.xyz', '0 0 0 0 0 1\n1 1 1\n')
            with self.assertRaises(FormatError) as context:
                load_cloud(path)
            self.assertEqual(context.exception.line, 2)
            self.assertTrue(str(context.exception).startswith(path + ': Missing normal'))

            path = self.write(directory, 'bad.xyz', '0 0 0 0 0 1\n0 a 0 0 0 1\n')
            with self.assertRaises(FormatError) as context:
                load_cloud(path)
            self.assertEqual(context.exception.line, 2)

            path = self.write(directory, 'zero.xyz', '0 0 0 0 0 0\n')
            with self.assertRaises(FormatError):
                load_cloud(path)

            path = self.write(directory, 'empty.xyz', '# nothing\n')
            with self.assertRaises(FormatError):
                load_cloud(path)

            path = self.write(directory, 'partial.ply', '\n'.join([
                'ply', 'format ascii 1.0', 'element vertex 1', 'property float x',
                'property float y', 'property float z', 'property float nx', 'end_header',
                '0 0 0 1', ''
            ]))
            with self.assertRaises(FormatError) as context:
                load_cloud(path)
            self.assertIn('ny', str(context.exception))

            path = self.write(directory, 'short.ply', '\n'.join([
                'ply', 'format ascii 1.0', 'element vertex 2', 'property float x',
                'property float y', 'property float z', 'end_header', '0 0 0', '1 1', ''
            ]))
            with self.assertRaises(FormatError) as context:
                load_points(path)
            self.assertEqual(context.exception.line, 9)
            self.assertIn('property z', str(context.exception))

            path = self.write(directory, 'binary.ply', 'ply\nformat binary_little_endian 1.0\n')
            with self.assertRaises(FormatError):
                load_points(path)

        self.finished_test()

    def test_index(self):
        self.start_tests(name='index')

        cloud = self.sphere_cloud()
        index = build_index(cloud)
        queries = self.random_points(n=300, seed=1)
        nearest, distances = index.query(queries)
        brute = np.linalg.norm(queries[:, None, :] - cloud.positions[None, :, :], axis=2)
        self.assertTrue(np.array_equal(distances, brute.min(axis=1)))
        self.assertTrue(np.array_equal(nearest, brute.argmin(axis=1)))

        # Ties resolve to the lowest index
        positions = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [-1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
        index = SpatialIndex(positions=positions)
        nearest, distances = index.query(np.zeros((1, 3)))
        self.assertEqual(nearest[0], 0)
        self.assertEqual(distances[0], 1.0)
        nearest, _ = index.query(np.array([[2.0, 0.0, 0.0]]))
        self.assertEqual(nearest[0], 0)

        distance, normal, position = approx_udf(build_index(cloud), (0.0, 0.0, 0.0))
        self.assertAlmostEqual(distance, 0.5)
        self.assertAlmostEqual(np.linalg.norm(normal), 1.0)
        self.assertEqual(position.shape, (3,))

        self.finished_test()

    def test_batch(self):
        self.start_tests(name='batch')

        cloud = self.sphere_cloud()
        index = build_index(cloud)
        batch = sample_batch(cloud, index, n_total=300, sigma=0.01, seed=2)
        self.assertEqual(batch.size, 100)
        self.assertEqual(batch.positions().shape, (300, 3))
        self.assertTrue(np.all(batch.distances()[:100] == 0.0))
        self.assertLessEqual(np.abs(batch.positions()).max(), 1.0)

        # Near targets are the displacement lengths along the normals
        offsets = batch.near_positions - batch.near_parents
        self.assertTrue(np.allclose(np.linalg.norm(offsets, axis=1), batch.near_targets))
        self.assertLess(batch.near_targets.max(), 0.06)

        # Far targets are exact nearest-neighbour distances
        brute = np.linalg.norm(
            batch.far_positions[:, None, :] - cloud.positions[None, :, :], axis=2
        ).min(axis=1)
        self.assertTrue(np.array_equal(batch.far_targets, brute))

        # Seeded batches repeat
        again = sample_batch(cloud, index, n_total=300, sigma=0.01, seed=2)
        self.assertTrue(np.array_equal(batch.positions(), again.positions()))

        self.assertEqual(len(batch.surface), 100)
        self.assertIsNone(batch.near[0].normal)
        lines = batch.to_text().splitlines()
        self.assertEqual(len(lines), 301)
        self.assertTrue(lines[1].startswith('surface '))
        self.assertTrue(lines[-1].startswith('far '))

        with self.assertRaises(DudfError):
            sample_batch(cloud, index, n_total=100)
        with self.assertRaises(DudfError):
            sample_batch(cloud, index, n_total=0)
        with self.assertRaises(DudfError):
            sample_batch(cloud, index, n_total=30, sigma=0.0)

        self.finished_test()

    def test_batch_boundary(self):
        self.start_tests(name='batch-boundary')

        # Displacements leaving the domain are redrawn, eventually kept at zero
        cloud = OrientedPointCloud(positions=[[1.0, 0.0, 0.0]], normals=[[1.0, 0.0, 0.0]])
        batch = sample_batch(cloud, build_index(cloud), n_total=300, sigma=0.5, seed=3)
        self.assertLessEqual(batch.near_positions[:, 0].max(), 1.0)
        self.assertTrue(np.all(batch.near_targets >= 0.0))

        self.finished_test()

    def test_mesh_surface(self):
        self.start_tests(name='mesh-surface')

        # Single triangle: barycentric coordinates all in [0, 1]
        corners = np.array([[0.0, 0.0, 0.0], [0.8, 0.1, 0.0], [0.2, 0.6, 0.3]])
        mesh = TriangleMesh(vertices=corners, triangles=np.array([[0, 1, 2]]))
        cloud = sample_mesh_surface(mesh, 1000, seed=1)
        self.assertEqual(cloud.positions.shape, (1000, 3))
        edges = np.stack([corners[1] - corners[0], corners[2] - corners[0]], axis=1)
        weights = np.linalg.lstsq(edges, (cloud.positions - corners[0]).T, rcond=None)[0]
        self.assertLess(np.abs(edges @ weights - (cloud.positions - corners[0]).T).max(), 1e-12)
        self.assertTrue(np.all(weights >= -1e-12))
        self.assertTrue(np.all(weights.sum(axis=0) <= 1.0 + 1e-12))
        normal = np.cross(corners[1] - corners[0], corners[2] - corners[0])
        normal /= np.linalg.norm(normal)
        self.assertTrue(np.allclose(cloud.normals, normal, atol=1e-12))

        # Areas 1:3, counts within three standard deviations of the binomial split
        mesh = TriangleMesh(
            vertices=np.array([
                [0.0, 0.0, 0.0], [0.5, 0.0, 0.0], [0.0, 0.5, 0.0],
                [0.0, 0.0, 0.5], [1.5, 0.0, 0.5], [0.0, 0.5, 0.5]
            ]),
            triangles=np.array([[0, 1, 2], [3, 4, 5]])
        )
        n = 4000
        cloud = sample_mesh_surface(mesh, n, seed=2)
        first = int(np.sum(cloud.positions[:, 2] < 0.25))
        self.assertLess(abs(first - 0.25 * n), 3.0 * np.sqrt(n * 0.25 * 0.75))
        self.assertTrue(np.allclose(cloud.normals, (0.0, 0.0, 1.0), atol=1e-12))

        with self.assertRaises(DudfError):
            sample_mesh_surface(mesh, 0)
        with self.assertRaises(DudfError):
            sample_mesh_surface(
                TriangleMesh(vertices=np.zeros((0, 3)), triangles=np.zeros((0, 3), dtype=int)), 5
            )

        self.finished_test()
