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

import numpy as np

from dudf import DudfError, util


class Camera(object):
    """
    Pinhole camera.

    Args:
        position (3-vector): Eye position (<span style="color:#C00000"><b>required</b></span>).
        look_at (3-vector): Target point (<span style="color:#00C000"><b>default</b></span>:
            origin).
        up (3-vector): Up direction, not parallel to the view direction
            (<span style="color:#00C000"><b>default</b></span>: y-axis).
        fov (0.0 < float < 180.0): Vertical field of view in degrees
            (<span style="color:#00C000"><b>default</b></span>: 45.0).
        width (int > 0): Image width in pixels (<span style="color:#00C000"><b>default</b></span>:
            128).
        height (int > 0): Image height in pixels
            (<span style="color:#00C000"><b>default</b></span>: 128).
    """

    def __init__(
        self, *, position, look_at=(0.0, 0.0, 0.0), up=(0.0, 1.0, 0.0), fov=45.0, width=128,
        height=128
    ):
        self.position = np.asarray(position, dtype=np.float64)
        self.look_at = np.asarray(look_at, dtype=np.float64)
        self.up = np.asarray(up, dtype=np.float64)
        for name in ('position', 'look_at', 'up'):
            value = getattr(self, name)
            if value.shape != (3,) or not np.all(np.isfinite(value)):
                raise DudfError.value(name='Camera', argument=name, value=value)
        if not 0.0 < fov < 180.0:
            raise DudfError.value(name='Camera', argument='fov', value=fov, hint='not in (0, 180)')
        for name, value in (('width', width), ('height', height)):
            if not isinstance(value, int) or value < 1:
                raise DudfError.value(name='Camera', argument=name, value=value, hint='< 1')
        self.fov = float(fov)
        self.width = width
        self.height = height

        view = self.look_at - self.position
        if np.linalg.norm(view) == 0.0:
            raise DudfError.invalid(name='Camera', argument='look_at', condition='equal position')
        self.forward = view / np.linalg.norm(view)
        right = np.cross(self.forward, self.up)
        if np.linalg.norm(right) < 1e-9 * max(np.linalg.norm(self.up), 1e-300):
            raise DudfError.invalid(
                name='Camera', argument='up', condition='parallel to the view direction'
            )
        self.right = right / np.linalg.norm(right)
        self.true_up = np.cross(self.right, self.forward)

    def rays(self):
        """
        Ray origins and unit directions (H * W, 3) through pixel centers, row-major from the
        top-left pixel.
        """
        half_height = np.tan(np.radians(self.fov) / 2.0)
        half_width = half_height * self.width / self.height
        u = (2.0 * (np.arange(self.width) + 0.5) / self.width - 1.0) * half_width
        v = (1.0 - 2.0 * (np.arange(self.height) + 0.5) / self.height) * half_height
        uu, vv = np.meshgrid(u, v, indexing='xy')
        directions = self.forward + uu.reshape(-1, 1) * self.right + \
            vv.reshape(-1, 1) * self.true_up
        directions = util.unit(directions)
        origins = np.broadcast_to(self.position, directions.shape).copy()
        return origins, directions
