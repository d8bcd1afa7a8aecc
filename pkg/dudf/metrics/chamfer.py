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
from scipy.spatial import cKDTree

from dudf import DudfError


# Normal length deviation tolerated without a renormalization warning
NORMAL_TOLERANCE = 1e-3


def _as_point_set(x, *, name, argument):
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != 3:
        raise DudfError.value(name=name, argument=argument + '.shape', value=x.shape)
    if x.shape[0] == 0:
        raise DudfError.required(name=name, argument=argument, expected='nonempty')
    return x


def nearest_neighbors(source, target, *, workers=1):
    """
    Distances and indices of the nearest target point of each source point.
    """
    distances, indices = cKDTree(data=target).query(x=source, k=1, workers=workers)
    return distances, indices


def chamfer(A, B, order=1, *, workers=1):
    """
    Symmetric Chamfer distance, half the sum of the mean nearest-neighbor distance (order 1)
    or squared distance (order 2) from A into B and from B into A.

    Args:
        A ((N, 3) array): First point set (<span style="color:#C00000"><b>required</b></span>).
        B ((M, 3) array): Second point set (<span style="color:#C00000"><b>required</b></span>).
        order (1 | 2): Distance exponent (<span style="color:#00C000"><b>default</b></span>: 1).
        workers (int): Parallel query workers
            (<span style="color:#00C000"><b>default</b></span>: 1).
    """
    A = _as_point_set(A, name='chamfer', argument='A')
    B = _as_point_set(B, name='chamfer', argument='B')
    if order not in (1, 2):
        raise DudfError.value(name='chamfer', argument='order', value=order, hint='not in {1,2}')
    forward, _ = nearest_neighbors(A, B, workers=workers)
    backward, _ = nearest_neighbors(B, A, workers=workers)
    forward = np.power(forward, order).mean()
    backward = np.power(backward, order).mean()
    # Sorted summation keeps chamfer(A, B) == chamfer(B, A) bitwise
    return 0.5 * float(min(forward, backward) + max(forward, backward))


def _unit_normals(normals, *, argument):
    normals = np.asarray(normals, dtype=np.float64)
    norms = np.linalg.norm(normals, axis=1)
    if np.any(norms == 0.0):
        raise DudfError.value(name='normal_consistency', argument=argument, value='zero normal')
    deviation = float(np.abs(norms - 1.0).max())
    if deviation > NORMAL_TOLERANCE:
        logging.getLogger(__name__).warning(
            "Renormalizing {}, maximal length deviation {:.3g}.".format(argument, deviation)
        )
    return normals / norms[:, None]


def normal_consistency(*, positions_a, normals_a, positions_b, normals_b, workers=1):
    """
    Unoriented normal consistency, one minus the symmetric mean absolute cosine between the
    normals of nearest-neighbor pairs; 0 is perfect, 1 is orthogonal everywhere.

    Args:
        positions_a ((N, 3) array): First point set
            (<span style="color:#C00000"><b>required</b></span>).
        normals_a ((N, 3) array): Unit normals of the first set
            (<span style="color:#C00000"><b>required</b></span>).
        positions_b ((M, 3) array): Second point set
            (<span style="color:#C00000"><b>required</b></span>).
        normals_b ((M, 3) array): Unit normals of the second set
            (<span style="color:#C00000"><b>required</b></span>).
    """
    positions_a = _as_point_set(positions_a, name='normal_consistency', argument='positions_a')
    positions_b = _as_point_set(positions_b, name='normal_consistency', argument='positions_b')
    normals_a = _unit_normals(normals_a, argument='normals_a')
    normals_b = _unit_normals(normals_b, argument='normals_b')
    if normals_a.shape != positions_a.shape or normals_b.shape != positions_b.shape:
        raise DudfError.mismatch(
            name='normal_consistency', argument='normals', value1=positions_a.shape,
            value2=normals_a.shape
        )
    _, forward = nearest_neighbors(positions_a, positions_b, workers=workers)
    _, backward = nearest_neighbors(positions_b, positions_a, workers=workers)
    forward = np.abs(np.einsum('bi,bi->b', normals_a, normals_b[forward])).mean()
    backward = np.abs(np.einsum('bi,bi->b', normals_b, normals_a[backward])).mean()
    consistency = 1.0 - 0.5 * float(min(forward, backward) + max(forward, backward))
    return float(np.clip(consistency, 0.0, 1.0))
