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

from datetime import datetime
import os
import sys

import numpy as np

from dudf import ScalingParams
from dudf.core import AnalyticField, OpenDisk, Plane, Sphere, Torus
from dudf.core.networks import init_siren


class UnittestBase(object):
    """
    Unit-test base class.
    """

    # Fields
    alpha = 100.0
    sphere_radius = 0.5

    # Networks
    hidden_layers = 2
    width = 8

    # Small training runs
    run_config = """
[input]
shape = sphere
radius = 0.5
points = 600

[train]
iterations = {iterations}
batch_size = 30
hidden_layers = 2
width = 8
seed = 1

[reconstruct]
resolution = 16

[render]
width = 12
height = 12
max_steps = 32

[eval]
samples = 500
"""

    def start_tests(self, name=None):
        """
        Start unit-test method.
        """
        if name is None:
            sys.stdout.write('\n{} {}: '.format(
                datetime.now().strftime('%H:%M:%S'), self.__class__.__name__[4:]
            ))
        else:
            sys.stdout.write('\n{} {} ({}): '.format(
                datetime.now().strftime('%H:%M:%S'), self.__class__.__name__[4:], name
            ))
        sys.stdout.flush()

    def finished_test(self, assertion=None):
        """
        Finished unit-test.
        """
        if assertion is None:
            assertion = True
        else:
            self.assertTrue(expr=assertion)
        if assertion:
            sys.stdout.write('.')
            sys.stdout.flush()

    def params(self, alpha=None):
        return ScalingParams(alpha=(self.__class__.alpha if alpha is None else alpha))

    def shapes(self):
        return dict(
            sphere=Sphere(radius=self.__class__.sphere_radius),
            torus=Torus(major_radius=0.5, minor_radius=0.2),
            open_disk=OpenDisk(radius=0.5)
        )

    def plane(self):
        return Plane(normal=(0.0, 0.0, 1.0), point=(0.0, 0.0, 0.0))

    def sphere_field(self, alpha=None, target='scaled'):
        return AnalyticField(
            shape=Sphere(radius=self.__class__.sphere_radius), params=self.params(alpha=alpha),
            target=target
        )

    def network(self, hidden_layers=None, width=None, seed=0, omega0=30.0):
        if hidden_layers is None:
            hidden_layers = self.__class__.hidden_layers
        if width is None:
            width = self.__class__.width
        return init_siren(hidden_layers=hidden_layers, width=width, omega0=omega0, seed=seed)

    def random_points(self, n, seed=0, low=-1.0, high=1.0):
        return np.random.default_rng(seed=seed).uniform(low=low, high=high, size=(n, 3))

    def write_run_config(self, directory, iterations=3, extra=''):
        path = os.path.join(directory, 'run.cfg')
        with open(path, 'w') as filehandle:
            filehandle.write(self.__class__.run_config.format(iterations=iterations))
            filehandle.write(extra)
        return path

    @staticmethod
    def read_ppm(path):
        """
        Reads a binary P6 image written with maxval 255 into an (H, W, 3) uint8 array.
        """
        with open(path, 'rb') as filehandle:
            content = filehandle.read()
        magic, size, maxval, payload = content.split(b'\n', 3)
        assert magic == b'P6' and maxval == b'255'
        width, height = (int(x) for x in size.split())
        pixels = np.frombuffer(payload, dtype=np.uint8)
        assert pixels.size == width * height * 3
        return pixels.reshape(height, width, 3)
