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

import logging
import struct

import numpy as np

from dudf import DudfError, FormatError


# Smallest supported lattice resolution per axis
MIN_RESOLUTION = 8

# Negative field values down to this are network error and clamped silently
NEGATIVE_TOLERANCE = 1e-3


class ScalarGrid(object):
    """
    Field values and gradients on the regular lattice over [-1, 1]^3, indexed [i, j, k] along
    (x, y, z).

    Args:
        values ((N, N, N) array): Field values (<span style="color:#C00000"><b>required</b></span>).
        gradients ((N, N, N, 3) array): Field gradients
            (<span style="color:#00C000"><b>default</b></span>: none).
    """

    def __init__(self, *, values, gradients=None):
        values = np.asarray(values, dtype=np.float64)
        if values.ndim != 3 or len(set(values.shape)) != 1:
            raise DudfError.value(name='ScalarGrid', argument='values.shape', value=values.shape)
        if gradients is not None:
            gradients = np.asarray(gradients, dtype=np.float64)
            if gradients.shape != values.shape + (3,):
                raise DudfError.mismatch(
                    name='ScalarGrid', argument='gradients', value1=values.shape + (3,),
                    value2=gradients.shape
                )
        self.values = values
        self.gradients = gradients

    @property
    def resolution(self):
        return self.values.shape[0]

    @property
    def origin(self):
        return np.array([-1.0, -1.0, -1.0])

    @property
    def spacing(self):
        return 2.0 / (self.resolution - 1)

    def with_values(self, values):
        return ScalarGrid(values=values, gradients=self.gradients)

    def positions(self):
        """Lattice positions (N^3, 3) in C order of [i, j, k]."""
        return lattice_positions(resolution=self.resolution)


def lattice_positions(*, resolution):
    axis = np.linspace(-1.0, 1.0, resolution)
    x, y, z = np.meshgrid(axis, axis, axis, indexing='ij')
    return np.stack([x.ravel(), y.ravel(), z.ravel()], axis=1)


def evaluate_grid(net, N, p, *, chunk=65536, with_gradients=True):
    """
    Samples a field and its gradient on the N^3 lattice over [-1, 1]^3.

    Args:
        net (SirenNetwork | AnalyticField): Field with a `forward_jet` method
            (<span style="color:#C00000"><b>required</b></span>).
        N (int >= 8): Lattice resolution per axis
            (<span style="color:#C00000"><b>required</b></span>).
        p (ScalingParams): Scaling parameters of the field, recorded for recovery
            (<span style="color:#C00000"><b>required</b></span>).
        chunk (int > 0): Points per evaluation call
            (<span style="color:#00C000"><b>default</b></span>: 65536).
        with_gradients (bool): Whether to evaluate gradients
            (<span style="color:#00C000"><b>default</b></span>: true).
    """
    if not isinstance(N, int) or N < MIN_RESOLUTION:
        raise DudfError.value(
            name='evaluate_grid', argument='N', value=N, hint='< {}'.format(MIN_RESOLUTION)
        )
    positions = lattice_positions(resolution=N)
    order = 1 if with_gradients else 0
    values = np.empty((positions.shape[0],))
    gradients = np.empty(positions.shape) if with_gradients else None
    for start in range(0, positions.shape[0], chunk):
        jet = net.forward_jet(positions[start: start + chunk], order=order)
        values[start: start + chunk] = jet.value
        if with_gradients:
            gradients[start: start + chunk] = jet.gradient

    invalid = ~np.isfinite(values)
    if with_gradients:
        invalid |= ~np.all(np.isfinite(gradients), axis=1)
    if invalid.any():
        first = np.unravel_index(int(np.flatnonzero(invalid)[0]), (N, N, N))
        raise DudfError.value(
            name='evaluate_grid', argument='field', value='non-finite',
            condition='lattice vertex {} (alpha {})'.format(tuple(int(i) for i in first), p.alpha)
        )
    return ScalarGrid(
        values=values.reshape(N, N, N),
        gradients=(None if gradients is None else gradients.reshape(N, N, N, 3))
    )


def recover_grid_distance(grid, p, *, negative_tolerance=NEGATIVE_TOLERANCE):
    """
    Replaces scaled field values by the recovered distance sqrt(max(t, 0) / alpha), leaving
    gradients untouched.
    """
    values = grid.values
    severe = values < -negative_tolerance
    if severe.any():
        logging.getLogger(__name__).warning(
            "Field quality: {} lattice values below {:g}, minimum {:.4g}, clamped to 0.".format(
                int(severe.sum()), -negative_tolerance, float(values.min())
            )
        )
    return grid.with_values(np.sqrt(np.maximum(values, 0.0) / p.alpha))


def clamp_grid_distance(grid, *, negative_tolerance=NEGATIVE_TOLERANCE):
    """
    Distance grid of a field that learned the raw unsigned distance, negatives clamped to 0.
    """
    severe = grid.values < -negative_tolerance
    if severe.any():
        logging.getLogger(__name__).warning(
            "Field quality: {} lattice values below {:g}, clamped to 0.".format(
                int(severe.sum()), -negative_tolerance
            )
        )
    return grid.with_values(np.maximum(grid.values, 0.0))


def write_grid(grid, path):
    """
    Debug dump: ASCII header "N ox oy oz spacing" and little-endian float64 values in C order.
    """
    origin = grid.origin
    header = '{} {:.17g} {:.17g} {:.17g} {:.17g}\n'.format(
        grid.resolution, origin[0], origin[1], origin[2], grid.spacing
    )
    with open(path, 'wb') as filehandle:
        filehandle.write(header.encode('ascii'))
        filehandle.write(grid.values.astype('<f8').tobytes(order='C'))


def read_grid(path):
    with open(path, 'rb') as filehandle:
        header = filehandle.readline().decode('ascii').split()
        payload = filehandle.read()
    if len(header) != 5:
        raise FormatError("Grid header needs 5 fields", path=path, line=1)
    resolution = int(header[0])
    expected = resolution ** 3 * struct.calcsize('<d')
    if len(payload) != expected:
        raise FormatError(
            "Grid payload has {} bytes, expected {}".format(len(payload), expected), path=path
        )
    values = np.frombuffer(payload, dtype='<f8').reshape(resolution, resolution, resolution)
    return ScalarGrid(values=values.astype(np.float64))
