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

from dudf import util
from dudf.rendering.eigen import symmetric_eig3_batch


class SurfaceQuality(object):
    """
    Field statistics over held-out surface points: the zero level set should hold f = 0,
    grad f = 0 and a leading Hessian eigenvector aligned with the surface normal.
    """

    def __init__(self, *, mean_abs_value, mean_gradient_norm, mean_alignment, value_std):
        self.mean_abs_value = mean_abs_value
        self.mean_gradient_norm = mean_gradient_norm
        self.mean_alignment = mean_alignment
        self.value_std = value_std

    def to_dict(self):
        return dict(
            mean_abs_value=self.mean_abs_value, mean_gradient_norm=self.mean_gradient_norm,
            mean_alignment=self.mean_alignment, value_std=self.value_std
        )

    def __repr__(self):
        return 'SurfaceQuality({})'.format(
            ', '.join('{}={:.4g}'.format(key, value) for key, value in self.to_dict().items())
        )


def surface_quality(field, positions, normals):
    """
    Mean |f|, mean ||grad f||, mean |v1 . n| and std f of a field on surface samples.
    """
    positions, _ = util.as_points(x=positions, name='surface_quality', argument='positions')
    normals = util.unit(np.asarray(normals, dtype=np.float64))
    jet = field.forward_jet(positions, order=2)
    _, vectors, _ = symmetric_eig3_batch(jet.hessian)
    alignment = np.abs(np.einsum('bi,bi->b', vectors[:, :, 0], normals))
    return SurfaceQuality(
        mean_abs_value=float(np.abs(jet.value).mean()),
        mean_gradient_norm=float(np.linalg.norm(jet.gradient, axis=1).mean()),
        mean_alignment=float(alignment.mean()), value_std=float(np.std(jet.value))
    )
