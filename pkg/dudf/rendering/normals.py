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

import numpy as np

from dudf import util
from dudf.rendering.eigen import symmetric_eig3_batch


# Smallest gradient norm usable as fallback normal
MIN_GRADIENT_NORM = 1e-6

NORMAL_EIGEN = 0
NORMAL_FALLBACK = 1
NORMAL_INVALID = 2


def surface_normals(field, points, view_directions):
    """
    Batched eigenvector normals facing the camera.

    Returns:
        Tuple of unit normals (B, 3), NaN where invalid, and per-point status codes
        (`NORMAL_EIGEN`, `NORMAL_FALLBACK`, `NORMAL_INVALID`).
    """
    points = np.asarray(points, dtype=np.float64)
    view_directions = np.asarray(view_directions, dtype=np.float64)
    jet = field.forward_jet(points, order=2)
    _, vectors, degenerate = symmetric_eig3_batch(jet.hessian)
    normals = vectors[:, :, 0].copy()
    status = np.full((points.shape[0],), NORMAL_EIGEN)

    gradient_norm = np.linalg.norm(jet.gradient, axis=1)
    fallback = degenerate & (gradient_norm > MIN_GRADIENT_NORM)
    invalid = degenerate & ~fallback
    normals[fallback] = util.unit(jet.gradient[fallback])
    status[fallback] = NORMAL_FALLBACK
    status[invalid] = NORMAL_INVALID

    facing = np.einsum('bi,bi->b', normals, view_directions)
    normals = np.where((facing > 0.0)[:, None], -normals, normals)
    normals[invalid] = np.nan
    if fallback.any() or invalid.any():
        logging.getLogger(__name__).debug(
            "Normals: {} gradient fallbacks, {} invalid of {}.".format(
                int(fallback.sum()), int(invalid.sum()), points.shape[0]
            )
        )
    return normals, status


def surface_normal(field, point, view_direction):
    """
    Unit normal at a hit point: leading Hessian eigenvector flipped against the view
    direction, the normalized gradient when the eigen gap is degenerate, None if neither is
    usable.
    """
    normals, status = surface_normals(
        field, np.asarray(point, dtype=np.float64)[None], np.asarray(view_direction)[None]
    )
    if status[0] == NORMAL_INVALID:
        return None
    return normals[0]
