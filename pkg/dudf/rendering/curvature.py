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

from dudf import DudfError, util
from dudf.rendering.eigen import symmetric_eig3_batch


# Central-difference step of the normal-field stencil
STENCIL_STEP = 1e-3


def _stencil_points(points, h):
    # Center first, then +h e_i and -h e_i per axis
    offsets = np.concatenate([np.zeros((1, 3)), h * np.eye(3), -h * np.eye(3)], axis=0)
    return points[:, None, :] + offsets[None, :, :]


def normal_jacobians(field, points, *, h=STENCIL_STEP, orientation=None):
    """
    Jacobian of the eigen-normal field at the given points by sign-aligned central
    differences: every neighbor's leading Hessian eigenvector is flipped to agree with the
    center's before differencing.

    Args:
        field (SirenNetwork | AnalyticField): Scaled distance field
            (<span style="color:#C00000"><b>required</b></span>).
        points ((B, 3) array): Surface points (<span style="color:#C00000"><b>required</b></span>).
        h (float > 0.0): Stencil step (<span style="color:#00C000"><b>default</b></span>: 1e-3).
        orientation (3-vector | (B, 3) array): Reference direction the center normal is
            aligned with (<span style="color:#00C000"><b>default</b></span>: eigenvector sign
            convention).

    Returns:
        Tuple of center normals (B, 3), Jacobians (B, 3, 3) with J[:, i, j] = d n_i / d x_j,
        and the validity mask (B,), false where any stencil point is eigen-degenerate.
    """
    if not h > 0.0:
        raise DudfError.value(name='normal_jacobians', argument='h', value=h, hint='<= 0.0')
    points = np.asarray(points, dtype=np.float64)
    count = points.shape[0]
    stencil = _stencil_points(points, h).reshape(-1, 3)
    jet = field.forward_jet(stencil, order=2)
    _, vectors, degenerate = symmetric_eig3_batch(jet.hessian)
    normals = vectors[:, :, 0].reshape(count, 7, 3)
    valid = ~degenerate.reshape(count, 7).any(axis=1)

    center = normals[:, 0, :]
    if orientation is not None:
        orientation = np.broadcast_to(np.asarray(orientation, dtype=np.float64), center.shape)
        flip = np.einsum('bi,bi->b', center, orientation) < 0.0
        center = np.where(flip[:, None], -center, center)
    alignment = np.einsum('bki,bi->bk', normals, center)
    normals = np.where((alignment < 0.0)[:, :, None], -normals, normals)

    # Columns are the x_j derivatives
    jacobians = (normals[:, 1:4, :] - normals[:, 4:7, :]) / (2.0 * h)
    jacobians = np.swapaxes(jacobians, 1, 2)
    return center, jacobians, valid


def curvatures(field, points, *, h=STENCIL_STEP, orientation=None):
    """
    Batched mean and Gaussian curvature of the surface through the given points.

    Mean curvature is half the divergence of the eigen-normal field, reported as |H| unless an
    orientation reference is supplied; Gaussian curvature is minus the determinant of the
    bordered matrix [[J_n, n], [n^T, 0]]. Degenerate stencils yield NaN.

    Returns:
        Tuple of mean curvatures (B,), Gaussian curvatures (B,) and the validity mask (B,).
    """
    points, _ = util.as_points(x=points, name='curvatures', argument='points')
    normals, jacobians, valid = normal_jacobians(
        field, points, h=h, orientation=orientation
    )
    mean = 0.5 * np.trace(jacobians, axis1=1, axis2=2)
    if orientation is None:
        mean = np.abs(mean)

    bordered = np.zeros((points.shape[0], 4, 4))
    bordered[:, :3, :3] = jacobians
    bordered[:, :3, 3] = normals
    bordered[:, 3, :3] = normals
    gaussian = -np.linalg.det(bordered)

    mean = np.where(valid, mean, np.nan)
    gaussian = np.where(valid, gaussian, np.nan)
    if not valid.all():
        logging.getLogger(__name__).debug(
            "Curvature: {} of {} stencils degenerate.".format(
                int((~valid).sum()), points.shape[0]
            )
        )
    return mean, gaussian, valid


def mean_curvature(field, s, *, h=STENCIL_STEP, orientation=None):
    """
    Mean curvature at one surface point, |H| by default and signed relative to `orientation`
    if given, NaN on a degenerate stencil.
    """
    if orientation is not None:
        orientation = np.asarray(orientation, dtype=np.float64)
    mean, _, _ = curvatures(
        field, np.asarray(s, dtype=np.float64)[None], h=h, orientation=orientation
    )
    return float(mean[0])


def gaussian_curvature(field, s, *, h=STENCIL_STEP):
    """
    Gaussian curvature at one surface point, NaN on a degenerate stencil.
    """
    _, gaussian, _ = curvatures(field, np.asarray(s, dtype=np.float64)[None], h=h)
    return float(gaussian[0])
