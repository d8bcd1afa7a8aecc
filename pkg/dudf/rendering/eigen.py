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


# Relative gap |λ1| - |λ2| below which the leading eigenvector is degenerate
DEGENERACY_GAP = 1e-9


class EigenDecomp3(object):
    """
    Eigen decomposition of a symmetric 3x3 matrix, eigenvalues sorted by descending magnitude.

    Args:
        eigenvalues ((3,) array): λ1, λ2, λ3
            (<span style="color:#C00000"><b>required</b></span>).
        eigenvectors ((3, 3) array): Unit eigenvectors as columns
            (<span style="color:#C00000"><b>required</b></span>).
        degenerate (bool): Whether |λ1| and |λ2| are too close for a unique v1
            (<span style="color:#C00000"><b>required</b></span>).
    """

    def __init__(self, *, eigenvalues, eigenvectors, degenerate):
        self.eigenvalues = eigenvalues
        self.eigenvectors = eigenvectors
        self.degenerate = degenerate

    @property
    def v1(self):
        return self.eigenvectors[:, 0]

    @property
    def v2(self):
        return self.eigenvectors[:, 1]

    @property
    def v3(self):
        return self.eigenvectors[:, 2]


def symmetric_eig3_batch(H):
    """
    Batched decomposition of (B, 3, 3) symmetric matrices.

    Returns:
        Tuple of eigenvalues (B, 3) by descending magnitude, eigenvectors (B, 3, 3) as columns
        with their largest-magnitude component positive, and the degeneracy mask (B,).
    """
    H = np.asarray(H, dtype=np.float64)
    values, vectors = np.linalg.eigh(H)
    order = np.argsort(-np.abs(values), axis=1, kind='stable')
    values = np.take_along_axis(values, order, axis=1)
    vectors = np.take_along_axis(vectors, order[:, None, :], axis=2)

    # Sign convention, first largest-magnitude component positive
    largest = np.argmax(np.abs(vectors), axis=1)
    signs = np.sign(np.take_along_axis(vectors, largest[:, None, :], axis=1))
    vectors = vectors * np.where(signs == 0.0, 1.0, signs)

    scale = np.linalg.norm(H, axis=(1, 2))
    gap = np.abs(values[:, 0]) - np.abs(values[:, 1])
    degenerate = gap <= DEGENERACY_GAP * scale
    return values, vectors, degenerate


def symmetric_eig3(H):
    """
    Decomposition of one symmetric 3x3 matrix with a deterministic eigenvector sign convention.
    """
    values, vectors, degenerate = symmetric_eig3_batch(np.asarray(H)[None])
    return EigenDecomp3(
        eigenvalues=values[0], eigenvectors=vectors[0], degenerate=bool(degenerate[0])
    )
