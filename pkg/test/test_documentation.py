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

import ast
import importlib
import os
import re
import tempfile
import unittest

import numpy as np

from dudf import ScalingParams
from dudf.core import Sphere
from dudf.execution import load_run_config, TrainConfig, train
from dudf.metrics import evaluate_reconstruction, MetricReport
from dudf.reconstruction import export_obj, load_obj, reconstruct_mesh
from dudf.sampling import OrientedPointCloud
from test.unittest_base import UnittestBase


class TestDocumentation(UnittestBase, unittest.TestCase):

    def test_quickstart(self):
        self.start_tests(name='readme-quickstart')

        positions, normals = Sphere(radius=0.5).sample_surface(
            n=2000, rng=np.random.default_rng(seed=0)
        )
        cloud = OrientedPointCloud(positions=positions, normals=normals)
        self.finished_test()

        config = TrainConfig(
            iterations=3, batch_size=30, params=ScalingParams(alpha=100.0), hidden_layers=2,
            width=8
        )
        net, log = train(cloud, config, use_tqdm=False)
        self.assertEqual(len(log), 3)
        self.finished_test()

        mesh = reconstruct_mesh(net, 16, config.params)
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'sphere.obj')
            export_obj(mesh, path)
            self.assertEqual(load_obj(path).num_triangles, mesh.num_triangles)
        self.finished_test()

        report = evaluate_reconstruction(mesh, (positions, normals), n=1000, resolution=16)
        self.assertIsInstance(report, MetricReport)
        self.assertIn('resolution=16\n', report.to_text())
        self.finished_test()

    def test_command_line(self):
        self.start_tests(name='readme-command-line')

        # The configuration referenced by the usage examples
        run = load_run_config('test/data/sphere.cfg').validate()
        self.assertEqual(run['train']['iterations'], 1500)
        self.assertEqual(run['reconstruct']['resolution'], 128)
        self.finished_test()

    def test_sphinx_config(self):
        self.start_tests(name='sphinx-config')

        with open('docs/conf.py') as filehandle:
            tree = ast.parse(filehandle.read())
        assigned = {
            target.id: node.value for node in tree.body if isinstance(node, ast.Assign)
            for target in node.targets if isinstance(target, ast.Name)
        }
        self.assertEqual(
            ast.literal_eval(assigned['extensions']),
            ['recommonmark', 'sphinx.ext.autodoc', 'sphinx.ext.napoleon']
        )
        self.assertEqual(ast.literal_eval(assigned['source_suffix']), ['.rst', '.md'])
        self.assertEqual(ast.literal_eval(assigned['html_theme']), 'sphinx_rtd_theme')
        # Only settings the build reads
        self.assertNotIn('latex_documents', assigned)
        self.assertNotIn('templates_path', assigned)
        self.assertNotIn('html_static_path', assigned)

        # Every documented object exists
        targets = list()
        for directory, _, files in os.walk('docs'):
            for name in files:
                if name.endswith('.rst'):
                    with open(os.path.join(directory, name)) as filehandle:
                        targets.extend(re.findall(
                            r'^\.\. auto(?:class|function):: (\S+)$', filehandle.read(),
                            flags=re.MULTILINE
                        ))
        self.assertGreater(len(targets), 0)
        for target in targets:
            module, name = target.rsplit('.', 1)
            self.assertTrue(hasattr(importlib.import_module(module), name), target)

        self.finished_test()
