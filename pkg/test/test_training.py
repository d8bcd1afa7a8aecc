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

from dudf import DudfError, TrainingError
from dudf.core.networks import init_siren
from dudf.core.objectives import LossWeights
from dudf.execution import save_checkpoint, TrainConfig, Trainer, TrainingLog, train
from dudf.sampling import build_index, OrientedPointCloud, sample_batch, TrainingBatch
from test.unittest_base import UnittestBase


class TestTraining(UnittestBase, unittest.TestCase):

    def cloud(self, n=300):
        positions, normals = self.shapes()['sphere'].sample_surface(
            n=n, rng=np.random.default_rng(seed=9)
        )
        return OrientedPointCloud(positions=positions, normals=normals)

    def config(self, **kwargs):
        values = dict(iterations=6, batch_size=30, hidden_layers=2, width=8, seed=1)
        values.update(kwargs)
        return TrainConfig(**values)

    def test_train(self):
        self.start_tests(name='train')

        net, log = train(self.cloud(), self.config())
        self.assertEqual(len(log), 6)
        frame = log.to_frame()
        self.assertEqual(list(frame.columns), list(TrainingLog.columns))
        self.assertEqual(frame['phase'].tolist(), [1, 1, 1, 1, 2, 2])
        self.assertTrue(np.all(np.isfinite(frame['total'])))
        self.assertTrue(np.all(frame.loc[frame['phase'] == 2, 'eikonal'] == 0.0))
        self.assertEqual(frame['lr'].iloc[0], 1e-4)
        self.assertTrue(np.all(np.isfinite(net.forward(self.random_points(n=10)))))

        text = log.to_text()
        lines = text.splitlines()
        self.assertEqual(len(lines), 7)
        self.assertEqual(lines[0], '# ' + ' '.join(TrainingLog.columns))
        self.assertEqual(len(lines[1].split()), len(TrainingLog.columns))

        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'train.png')
            log.plot(path)
            self.assertGreater(os.path.getsize(path), 0)

        self.finished_test()

    def test_reproducible(self):
        self.start_tests(name='reproducible')

        config = self.config(iterations=3, deterministic=True)
        first, first_log = train(self.cloud(), config)
        second, second_log = train(self.cloud(), config)
        for a, b in zip(first.layer_arrays(), second.layer_arrays()):
            self.assertTrue(np.array_equal(a[0], b[0]))
            self.assertTrue(np.array_equal(a[1], b[1]))
        self.assertTrue(np.array_equal(
            first_log.to_frame()['total'], second_log.to_frame()['total']
        ))

        with tempfile.TemporaryDirectory() as directory:
            paths = [os.path.join(directory, name) for name in ('first.dudf', 'second.dudf')]
            for net, path in zip((first, second), paths):
                save_checkpoint(net, config.params, path, seed=config.seed, config=config)
            contents = list()
            for path in paths:
                with open(path, 'rb') as filehandle:
                    contents.append(filehandle.read())
            self.assertEqual(contents[0], contents[1])

        self.finished_test()

    def test_normals_unused(self):
        self.start_tests(name='normals-unused')

        # Without the alignment term, surface normals reach no active loss term
        config = self.config(weights=LossWeights(lambda_g=0.0), deterministic=True)
        cloud = self.cloud()
        rng = np.random.default_rng(seed=3)
        batches = [
            sample_batch(cloud, build_index(cloud), n_total=config.batch_size, seed=rng)
            for _ in range(config.iterations)
        ]
        nets = list()
        for replace in (False, True):
            trainer = Trainer(net=init_siren(hidden_layers=2, width=8, seed=1), config=config)
            for iteration, batch in enumerate(batches):
                normals = rng.standard_normal(size=batch.surface_normals.shape)
                normals /= np.linalg.norm(normals, axis=1, keepdims=True)
                if replace:
                    batch = TrainingBatch(
                        surface_positions=batch.surface_positions, surface_normals=normals,
                        near_positions=batch.near_positions, near_targets=batch.near_targets,
                        far_positions=batch.far_positions, far_targets=batch.far_targets
                    )
                trainer.step(iteration=iteration, batch=batch)
            nets.append(trainer.net)
        for a, b in zip(nets[0].layer_arrays(), nets[1].layer_arrays()):
            self.assertTrue(np.array_equal(a[0], b[0]))
            self.assertTrue(np.array_equal(a[1], b[1]))

        self.finished_test()

    def test_callback(self):
        self.start_tests(name='callback')

        records = list()

        def callback(iteration, record):
            records.append(record)
            return iteration < 1

        _, log = train(self.cloud(), self.config(), callback=callback)
        self.assertEqual(len(log), 2)
        self.assertEqual([record['iteration'] for record in records], [0, 1])

        net, log = train(self.cloud(), self.config(iterations=0))
        self.assertEqual(len(log), 0)
        self.assertEqual(net.hidden_layers, 2)

        self.finished_test()

    def test_errors(self):
        self.start_tests(name='errors')

        cloud = self.cloud()
        outside = OrientedPointCloud(positions=(cloud.positions * 3.0), normals=cloud.normals)
        with self.assertRaises(DudfError):
            train(outside, self.config())

        with self.assertRaises(DudfError):
            TrainConfig(batch_size=31)
        with self.assertRaises(DudfError):
            TrainConfig(target='signed')

        net = self.network(seed=1)
        values = [p.numpy() for p in net.parameters]
        values[-1] = np.full_like(values[-1], np.nan)
        net.assign(values=values)
        with self.assertRaises(TrainingError) as context:
            train(cloud, self.config(), net=net)
        self.assertEqual(context.exception.iteration, 0)
        self.assertEqual(context.exception.term, 'dirichlet')
        self.assertEqual(context.exception.index, 0)

        self.finished_test()
