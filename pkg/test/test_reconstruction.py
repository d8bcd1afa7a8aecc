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
from dudf.core import AnalyticField, OpenDisk
from dudf.reconstruction import active_cells, evaluate_grid, export_obj, \
    extract_mesh_gradient_mc, load_obj, pseudo_signs, read_grid, reconstruct_mesh, \
    recover_grid_distance, ScalarGrid, TriangleMesh, write_grid
from test.unittest_base import UnittestBase


class TestReconstruction(UnittestBase, unittest.TestCase):

    def tetrahedron(self):
        return TriangleMesh(
            vertices=[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]],
            triangles=[[0, 2, 1], [0, 1, 3], [0, 3, 2], [1, 2, 3]]
        )

    def test_mesh(self):
        self.start_tests(name='mesh')

        mesh = self.tetrahedron()
        self.assertTrue(mesh.is_watertight())
        self.assertEqual(mesh.boundary_edges().shape, (0, 2))
        self.assertAlmostEqual(mesh.face_areas()[0], 0.5)
        self.assertTrue(np.allclose(mesh.face_normals()[0], (0.0, 0.0, -1.0)))

        opened = TriangleMesh(vertices=mesh.vertices, triangles=mesh.triangles[:3])
        self.assertFalse(opened.is_watertight())
        self.assertEqual(opened.boundary_edges().shape, (3, 2))

        degenerate = TriangleMesh(
            vertices=np.concatenate([mesh.vertices, [[2.0, 0.0, 0.0], [5.0, 5.0, 5.0]]]),
            triangles=np.concatenate([mesh.triangles, [[0, 1, 4]]])
        ).remove_degenerate()
        self.assertEqual(degenerate.num_triangles, 4)
        self.assertEqual(degenerate.num_vertices, 4)

        self.assertTrue(TriangleMesh(vertices=np.zeros((0, 3)), triangles=[]).is_empty())
        self.assertFalse(TriangleMesh(vertices=np.zeros((0, 3)), triangles=[]).is_watertight())
        with self.assertRaises(DudfError):
            TriangleMesh(vertices=mesh.vertices, triangles=[[0, 1, 4]])

        self.finished_test()

    def test_obj(self):
        self.start_tests(name='obj')

        mesh = self.tetrahedron()
        mesh = TriangleMesh(
            vertices=mesh.vertices, triangles=mesh.triangles,
            vertex_scalars=dict(mean_curvature=np.array([0.5, 1.0, 1.5, 2.0]))
        )
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'out', 'mesh.obj')
            export_obj(mesh, path)
            with open(path) as filehandle:
                lines = filehandle.read().splitlines()
            self.assertIn('f 1 3 2', lines)
            self.assertIn('# vH 1.5', lines)

            loaded = load_obj(path)
            self.assertTrue(np.array_equal(loaded.triangles, mesh.triangles))
            self.assertTrue(np.allclose(loaded.vertices, mesh.vertices))
            self.assertTrue(
                np.allclose(loaded.vertex_scalars['mean_curvature'], (0.5, 1.0, 1.5, 2.0))
            )

            path = os.path.join(directory, 'quad.obj')
            with open(path, 'w') as filehandle:
                filehandle.write('v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nf 1/1/1 2/2/2 3/3/3 -1\n')
            quad = load_obj(path)
            self.assertEqual(quad.triangles.tolist(), [[0, 1, 2], [0, 2, 3]])

            path = os.path.join(directory, 'broken.obj')
            with open(path, 'w') as filehandle:
                filehandle.write('v 0 0 0\nv 1 0\n')
            with self.assertRaises(FormatError) as context:
                load_obj(path)
            self.assertEqual(context.exception.line, 2)

        self.finished_test()

    def test_grid(self):
        self.start_tests(name='grid')

        p = self.params()
        grid = evaluate_grid(self.sphere_field(), 9, p)
        self.assertEqual(grid.values.shape, (9, 9, 9))
        self.assertEqual(grid.gradients.shape, (9, 9, 9, 3))
        self.assertAlmostEqual(grid.spacing, 0.25)
        # Lattice index (4, 4, 6) is the point (0, 0, 0.5)
        self.assertAlmostEqual(grid.values[4, 4, 6], 0.0)
        self.assertTrue(np.allclose(grid.positions()[4 * 81 + 4 * 9 + 6], (0.0, 0.0, 0.5)))

        recovered = recover_grid_distance(grid, p)
        distances = np.abs(np.linalg.norm(grid.positions(), axis=1) - 0.5).reshape(9, 9, 9)
        self.assertTrue(np.all(recovered.values <= distances + 1e-12))

        with self.assertLogs('dudf.reconstruction.grid', level='WARNING'):
            recover_grid_distance(grid.with_values(grid.values - 0.01), p)

        with self.assertRaises(DudfError):
            evaluate_grid(self.sphere_field(), 4, p)

        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'grid.bin')
            write_grid(recovered, path)
            with open(path, 'rb') as filehandle:
                header = filehandle.readline()
            self.assertEqual(header, b'9 -1 -1 -1 0.25\n')
            self.assertEqual(os.path.getsize(path), len(header) + 8 * 9 ** 3)
            loaded = read_grid(path)
            self.assertTrue(np.array_equal(loaded.values, recovered.values))

            with open(path, 'ab') as filehandle:
                filehandle.write(b'\x00')
            with self.assertRaises(FormatError):
                read_grid(path)

        self.finished_test()

    def test_pseudo_signs(self):
        self.start_tests(name='pseudo-signs')

        gradients = np.zeros((1, 8, 3))
        gradients[0, :4] = (0.0, 0.0, 1.0)
        gradients[0, 4:] = (0.0, 0.0, -1.0)
        gradients[0, 3] = (1.0, 0.0, 0.0)
        signs = pseudo_signs(gradients)
        self.assertEqual(signs.tolist(), [[1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0]])

        # Only cells within a diagonal of the surface are active
        values = np.full((4, 4, 4), 10.0)
        values[1, 2, 3] = 0.0
        cells = active_cells(ScalarGrid(values=values))
        self.assertEqual(sorted(map(tuple, cells.tolist())), [
            (0, 1, 2), (0, 2, 2), (1, 1, 2), (1, 2, 2)
        ])

        self.finished_test()

    def test_sphere(self):
        self.start_tests(name='sphere')

        p = self.params()
        field = self.sphere_field(target='distance')
        mesh = reconstruct_mesh(field, 32, p, target='distance')
        self.assertFalse(mesh.is_empty())
        self.assertTrue(mesh.is_watertight())
        spacing = 2.0 / 31
        radii = np.linalg.norm(mesh.vertices, axis=1)
        self.assertLess(np.abs(radii - 0.5).max(), 0.5 * spacing)
        self.assertAlmostEqual(mesh.face_areas().sum(), np.pi, delta=0.15)

        # Scaled field with distance recovery
        mesh = reconstruct_mesh(self.sphere_field(), 64, p)
        self.assertTrue(mesh.is_watertight())
        radii = np.linalg.norm(mesh.vertices, axis=1)
        self.assertLess(np.abs(radii - 0.5).max(), 0.5 * 2.0 / 63)

        # Repeatable
        again = reconstruct_mesh(self.sphere_field(), 64, p)
        self.assertTrue(np.array_equal(mesh.vertices, again.vertices))
        self.assertTrue(np.array_equal(mesh.triangles, again.triangles))

        self.finished_test()

    def test_open_surfaces(self):
        self.start_tests(name='open-surfaces')

        p = self.params()
        spacing = 2.0 / 63
        field = AnalyticField(shape=OpenDisk(radius=0.5), params=p)
        mesh = reconstruct_mesh(field, 64, p)
        self.assertFalse(mesh.is_empty())
        self.assertGreater(mesh.boundary_edges().shape[0], 0)
        radial = np.linalg.norm(mesh.vertices[:, :2], axis=1)
        # Interior stays on the disk plane, the rim may fracture by one lattice step
        interior = radial < 0.5 - 2.0 * spacing
        self.assertTrue(interior.any())
        self.assertLess(np.abs(mesh.vertices[interior, 2]).max(), 1e-3)
        self.assertLessEqual(np.abs(mesh.vertices[:, 2]).max(), 2.0 * spacing)
        self.assertLess(radial.max(), 0.5 + 3.0 * spacing)
        self.assertGreater(radial.max(), 0.5 - spacing)

        field = AnalyticField(shape=self.plane(), params=p)
        mesh = reconstruct_mesh(field, 16, p)
        self.assertLess(np.abs(mesh.vertices[:, 2]).max(), 1e-3)
        self.assertAlmostEqual(mesh.face_areas().sum(), 4.0, delta=1e-6)

        # Surface through lattice nodes: zero node gradients sign as +, no crossings remain
        mesh = reconstruct_mesh(field, 9, p)
        self.assertTrue(mesh.is_empty())

        self.finished_test()

    def test_empty(self):
        self.start_tests(name='empty')

        grid = ScalarGrid(values=np.ones((8, 8, 8)), gradients=np.ones((8, 8, 8, 3)))
        self.assertTrue(extract_mesh_gradient_mc(grid).is_empty())
        with self.assertRaises(DudfError):
            extract_mesh_gradient_mc(ScalarGrid(values=np.ones((8, 8, 8))))
        with self.assertRaises(DudfError):
            ScalarGrid(values=np.ones((8, 8, 7)))

        self.finished_test()
