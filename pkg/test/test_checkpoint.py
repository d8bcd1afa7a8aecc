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

import json
import os
import tempfile
import unittest

import numpy as np

from dudf import CheckpointError, DudfError, FormatError
from dudf.execution.checkpoint import load_checkpoint, parameter_count, save_checkpoint
from dudf.execution.trainer import TrainConfig
from test.unittest_base import UnittestBase


class TestCheckpoint(UnittestBase, unittest.TestCase):

    def test_round_trip(self):
        self.start_tests(name='round-trip')

        net = self.network(hidden_layers=3, width=6, seed=3, omega0=20.0)
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'nested', 'model.dudf')
            save_checkpoint(net, self.params(alpha=250.0), path, seed=7)

            with open(path, 'rb') as filehandle:
                header = filehandle.readline()
            self.assertEqual(header, b'DUDF1 3 6 20.0 250.0 7\n')
            self.assertEqual(
                os.path.getsize(path),
                len(header) + 4 * parameter_count(hidden_layers=3, width=6)
            )

            loaded = load_checkpoint(path)
        self.assertEqual(loaded.seed, 7)
        self.assertEqual(loaded.params.alpha, 250.0)
        self.assertEqual(loaded.net.hidden_layers, 3)
        self.assertEqual(loaded.net.width, 6)
        self.assertEqual(loaded.net.omega0, 20.0)
        for (weights, bias), (loaded_weights, loaded_bias) in zip(
            net.layer_arrays(), loaded.net.layer_arrays()
        ):
            self.assertTrue(np.array_equal(loaded_weights, weights.astype(np.float32)))
            self.assertTrue(np.array_equal(loaded_bias, bias.astype(np.float32)))

        x = self.random_points(n=20, seed=1)
        self.assertTrue(np.allclose(loaded.net.forward(x), net.forward(x), atol=1e-4))

        self.finished_test()

    def test_parameter_count(self):
        self.start_tests(name='parameter-count')

        self.assertEqual(parameter_count(hidden_layers=1, width=4), (4 * 3 + 4) + (4 + 1))
        self.assertEqual(
            parameter_count(hidden_layers=2, width=8), (8 * 3 + 8) + (8 * 8 + 8) + (8 + 1)
        )

        self.finished_test()

    def test_errors(self):
        self.start_tests(name='errors')

        net = self.network()
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'model.dudf')

            with self.assertRaises(DudfError):
                load_checkpoint(path)

            save_checkpoint(net, self.params(), path)
            with open(path, 'rb') as filehandle:
                content = filehandle.read()
            header = content[:content.find(b'\n') + 1]
            expected = 4 * parameter_count(hidden_layers=2, width=8)

            # Truncated payload
            with open(path, 'wb') as filehandle:
                filehandle.write(content[:-4])
            with self.assertRaises(CheckpointError) as context:
                load_checkpoint(path)
            self.assertIn('expected {} bytes'.format(expected), str(context.exception))
            self.assertIn('{} bytes'.format(expected - 4), str(context.exception))

            # Trailing bytes
            with open(path, 'wb') as filehandle:
                filehandle.write(content + b'\x00')
            with self.assertRaises(CheckpointError):
                load_checkpoint(path)

            # Foreign version tag
            with open(path, 'wb') as filehandle:
                filehandle.write(b'DUDF0' + content[5:])
            with self.assertRaises(CheckpointError) as context:
                load_checkpoint(path)
            self.assertIn('DUDF0', str(context.exception))
            self.assertTrue(str(context.exception).startswith(path + ': Unrecognized version'))
            self.assertEqual(context.exception.path, path)

            with open(path, 'wb') as filehandle:
                filehandle.write(b'\xff\xfe' + content)
            with self.assertRaises(CheckpointError):
                load_checkpoint(path)

            with open(path, 'wb') as filehandle:
                filehandle.write(header.replace(b' 8 ', b' x '))
            with self.assertRaises(CheckpointError):
                load_checkpoint(path)

            with open(path, 'wb') as filehandle:
                filehandle.write(b'DUDF1 2 8')
            with self.assertRaises(CheckpointError):
                load_checkpoint(path)

        self.finished_test()

    def test_error_paths(self):
        self.start_tests(name='error-paths')

        # Lowercase paths stay verbatim, the message after them is normalized
        error = CheckpointError("missing header line", path='data/model.dudf')
        self.assertEqual(str(error), 'data/model.dudf: Missing header line.')
        self.assertEqual(error.path, 'data/model.dudf')
        error = FormatError("unknown key x", path='runs/run.cfg', line=3)
        self.assertEqual(str(error), 'runs/run.cfg: Unknown key x (line 3).')
        self.assertEqual(str(CheckpointError("missing header line")), 'Missing header line.')

        self.finished_test()

    def test_config_echo(self):
        self.start_tests(name='config-echo')

        net = self.network()
        config = TrainConfig(
            iterations=9, batch_size=30, params=self.params(alpha=250.0), target='distance',
            hidden_layers=2, width=8, seed=4
        )
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'model.dudf')
            save_checkpoint(net, config.params, path, seed=4, config=config)
            with open(path + '.json') as filehandle:
                echo = json.load(filehandle)
            self.assertEqual(echo['target'], 'distance')
            self.assertEqual(echo['iterations'], 9)
            self.assertEqual(echo['params'], dict(alpha=250.0))
            self.assertEqual(len(echo['lr_phases']), 3)
            self.assertTrue(echo['lr_phases'][2]['cosine'])
            self.assertEqual(echo['weights'], config.weights.to_dict())

            loaded = load_checkpoint(path)
            self.assertEqual(loaded.target, 'distance')
            self.assertEqual(loaded.config, echo)

            # Saving without configuration drops a stale echo
            save_checkpoint(net, config.params, path)
            self.assertFalse(os.path.isfile(path + '.json'))
            loaded = load_checkpoint(path)
            self.assertEqual(loaded.target, 'scaled')
            self.assertIsNone(loaded.config)

            with open(path + '.json', 'w') as filehandle:
                filehandle.write('{"target": ')
            with self.assertRaises(CheckpointError) as context:
                load_checkpoint(path)
            self.assertTrue(str(context.exception).startswith(path + '.json: '))

            with open(path + '.json', 'w') as filehandle:
                filehandle.write('{"target": "signed"}')
            with self.assertRaises(CheckpointError):
                load_checkpoint(path)

        self.finished_test()
