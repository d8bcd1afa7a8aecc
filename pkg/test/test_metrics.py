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
import pandas as pd

from dudf import DudfError
from dudf.metrics import append_results, chamfer, evaluate_reconstruction, MetricReport, \
    normal_consistency, surface_quality
from dudf.reconstruction import reconstruct_mesh, TriangleMesh
from dudf.sampling import OrientedPointCloud, sample_mesh_surface
from test.unittest_base import UnittestBase


class TestMetrics(UnittestBase, unittest.TestCase):

    def sphere_mesh(self):
        field = self.sphere_field(target='distance')
        return reconstruct_mesh(field, 32, self.params(), target='distance')

    def test_chamfer(self):
        self.start_tests(name='chamfer')

        A = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 2.0]])
        B = np.array([[0.0, 0.0, 1.0]])
        self.assertEqual(chamfer(A, B), 1.0)
        self.assertEqual(chamfer(A, B, order=2), 1.0)
        self.assertEqual(chamfer(A, A), 0.0)

        rng = np.random.default_rng(seed=0)
        A = rng.uniform(-1.0, 1.0, size=(500, 3))
        B = rng.uniform(-1.0, 1.0, size=(300, 3))
        self.assertEqual(chamfer(A, B), chamfer(B, A))
        self.assertEqual(chamfer(A, B, order=2), chamfer(B, A, order=2))

        # Homogeneous in a uniform scale
        self.assertAlmostEqual(chamfer(3.0 * A, 3.0 * B), 3.0 * chamfer(A, B), places=12)
        self.assertAlmostEqual(
            chamfer(3.0 * A, 3.0 * B, order=2), 9.0 * chamfer(A, B, order=2), places=12
        )

        with self.assertRaises(DudfError):
            chamfer(np.zeros((0, 3)), B)
        with self.assertRaises(DudfError):
            chamfer(A, B, order=3)
        with self.assertRaises(DudfError):
            chamfer(A[:, :2], B)

        self.finished_test()

    def test_normal_consistency(self):
        self.start_tests(name='normal-consistency')

        positions = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
        up = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 1.0]])
        side = np.array([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        self.assertEqual(normal_consistency(
            positions_a=positions, normals_a=up, positions_b=positions, normals_b=-up
        ), 0.0)
        self.assertEqual(normal_consistency(
            positions_a=positions, normals_a=up, positions_b=positions, normals_b=side
        ), 1.0)

        tilted = np.array([[0.0, 0.6, 0.8], [0.0, 0.0, 1.0]])
        value = normal_consistency(
            positions_a=positions, normals_a=up, positions_b=positions, normals_b=tilted
        )
        self.assertAlmostEqual(value, 0.1)

        with self.assertLogs('dudf.metrics.chamfer', level='WARNING'):
            value = normal_consistency(
                positions_a=positions, normals_a=(2.0 * up), positions_b=positions,
                normals_b=tilted
            )
        self.assertAlmostEqual(value, 0.1)

        with self.assertRaises(DudfError):
            normal_consistency(
                positions_a=positions, normals_a=np.zeros((2, 3)), positions_b=positions,
                normals_b=up
            )

        self.finished_test()

    def test_evaluate(self):
        self.start_tests(name='evaluate')

        mesh = self.sphere_mesh()
        reference = sample_mesh_surface(mesh, 100000, seed=5)
        report = evaluate_reconstruction(mesh, reference, resolution=32)
        self.assertFalse(report.failed)
        self.assertLess(report.l1cd_x1e3, 5.0)
        self.assertLess(report.nc, 0.01)
        self.assertEqual(report.samples, 100000)
        self.assertEqual(report.resolution, 32)

        # Reference pushed outward by 0.01 along the radius
        samples = sample_mesh_surface(mesh, 20000, seed=6)
        offset = OrientedPointCloud(positions=(samples.positions * 1.02), normals=samples.normals)
        report = evaluate_reconstruction(mesh, offset, n=50000)
        self.assertGreater(report.l1cd_x1e3, 9.0)
        self.assertLess(report.l1cd_x1e3, 14.0)
        self.assertLess(report.nc, 0.01)

        # Fixed seed, same report
        again = evaluate_reconstruction(mesh, offset, n=50000)
        self.assertEqual(report.l1cd_x1e3, again.l1cd_x1e3)

        with self.assertLogs('dudf.metrics.report', level='WARNING'):
            report = evaluate_reconstruction(mesh, (offset.positions, None), n=1000)
        self.assertIsNone(report.nc)
        self.assertIn('nc=none\n', report.to_text())

        self.finished_test()

    def test_failure(self):
        self.start_tests(name='failure')

        empty = TriangleMesh(vertices=np.zeros((0, 3)), triangles=np.zeros((0, 3), dtype=np.int64))
        reference = (np.zeros((3, 3)), None)
        with self.assertLogs('dudf.metrics.report', level='WARNING'):
            report = evaluate_reconstruction(empty, reference, resolution=64)
        self.assertTrue(report.failed)
        self.assertEqual(report.l1cd_x1e3, float('inf'))
        self.assertEqual(report.nc, 1.0)
        lines = report.to_text().splitlines()
        self.assertEqual(lines, [
            'l1cd_x1e3=inf', 'l2cd_x1e3=inf', 'nc=1', 'samples=0', 'reference_samples=3',
            'resolution=64', 'failed=true'
        ])

        with self.assertRaises(DudfError):
            evaluate_reconstruction(empty, (np.zeros((0, 3)), None))
        with self.assertRaises(DudfError):
            MetricReport(l1cd_x1e3=-1.0, l2cd_x1e3=0.0, nc=0.0, samples=1, reference_samples=1)

        self.finished_test()

    def test_results_table(self):
        self.start_tests(name='results-table')

        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'results.tsv')
            first = MetricReport(
                l1cd_x1e3=1.5, l2cd_x1e3=0.25, nc=0.01, samples=10, reference_samples=20
            )
            append_results(path, dict(name='first', **first.to_dict()))
            second = MetricReport.failure(reference_samples=20)
            append_results(path, dict(name='second', **second.to_dict()))

            frame = pd.read_csv(path, sep='\t')
            self.assertEqual(frame['name'].tolist(), ['first', 'second'])
            self.assertEqual(frame['l1cd_x1e3'].tolist()[0], 1.5)
            self.assertTrue(np.isinf(frame['l1cd_x1e3'].tolist()[1]))
            self.assertEqual(frame['failed'].tolist(), [False, True])

        self.finished_test()

    def test_surface_quality(self):
        self.start_tests(name='surface-quality')

        positions, normals = self.shapes()['sphere'].sample_surface(
            n=100, rng=np.random.default_rng(seed=2)
        )
        quality = surface_quality(self.sphere_field(), positions, normals)
        self.assertLess(quality.mean_abs_value, 1e-12)
        self.assertLess(quality.mean_gradient_norm, 1e-9)
        self.assertAlmostEqual(quality.mean_alignment, 1.0, places=6)
        self.assertIn('mean_alignment', repr(quality))

        self.finished_test()
