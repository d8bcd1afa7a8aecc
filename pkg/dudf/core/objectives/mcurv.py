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

import tensorflow as tf

from dudf.core.utils import tf_util


# Below this ‖H n‖ or eigenvalue magnitude gap a sample is degenerate and skipped
DEGENERACY_TOLERANCE = 1e-9


def degenerate_mask(*, hessians, normals):
    """
    Boolean mask of samples whose alignment term is undefined: vanishing ‖H n‖ or top two
    eigenvalue magnitudes within tolerance. Not differentiated.
    """
    hessians = tf.stop_gradient(input=hessians)
    normals = tf.stop_gradient(input=normals)
    projected = tf.linalg.matvec(a=hessians, b=normals)
    small = tf.math.less_equal(
        x=tf.norm(tensor=projected, axis=-1), y=DEGENERACY_TOLERANCE
    )
    magnitudes = tf.sort(values=tf.math.abs(x=tf.linalg.eigvalsh(tensor=hessians)), axis=-1)
    close = tf.math.less(
        x=(magnitudes[:, 2] - magnitudes[:, 1]), y=DEGENERACY_TOLERANCE
    )
    return tf.math.logical_or(x=small, y=close)


def mcurv_residuals(*, hessians, normals):
    """
    Smooth alignment surrogate 1 - |nᵀ H n| / ‖H n‖ per sample, zero at degenerate samples.

    Returns:
        Tuple of per-sample residuals and the degenerate-sample mask.
    """
    degenerate = degenerate_mask(hessians=hessians, normals=normals)
    projected = tf.linalg.matvec(a=hessians, b=normals)
    rayleigh = tf.math.abs(x=tf.math.reduce_sum(input_tensor=(normals * projected), axis=-1))
    norms = tf_util.safe_norm(x=projected)
    safe_norms = tf.where(condition=degenerate, x=tf.ones_like(input=norms), y=norms)
    residuals = 1.0 - rayleigh / safe_norms
    residuals = tf.where(condition=degenerate, x=tf.zeros_like(input=residuals), y=residuals)
    return residuals, degenerate


def exact_alignment_residuals(*, hessians, normals):
    """
    1 - |v1 · n| per sample with v1 the eigenvector of the largest-magnitude eigenvalue.
    """
    eigenvalues, eigenvectors = tf.linalg.eigh(tensor=hessians)
    largest = tf.math.argmax(input=tf.math.abs(x=eigenvalues), axis=-1)
    v1 = tf.gather(params=tf.linalg.matrix_transpose(a=eigenvectors), indices=largest, batch_dims=1)
    return 1.0 - tf.math.abs(x=tf.math.reduce_sum(input_tensor=(v1 * normals), axis=-1))


def mcurv_loss(jets, normals, *, exact=False):
    """
    Maximum-curvature alignment loss on surface samples, mean over non-degenerate samples.

    Args:
        jets (Jet2): Batched surface jets with Hessians
            (<span style="color:#C00000"><b>required</b></span>).
        normals (array): Unit surface normals (<span style="color:#C00000"><b>required</b></span>).
        exact (bool): Whether to use true eigenvectors instead of the differentiable surrogate
            (<span style="color:#00C000"><b>default</b></span>: false).

    Returns:
        Tuple of the loss and the number of skipped degenerate samples.
    """
    hessians = tf_util.float64(jets.hessian)
    normals = tf_util.float64(normals)
    if exact:
        residuals = exact_alignment_residuals(hessians=hessians, normals=normals)
        degenerate = degenerate_mask(hessians=hessians, normals=normals)
        residuals = tf.where(condition=degenerate, x=tf.zeros_like(input=residuals), y=residuals)
    else:
        residuals, degenerate = mcurv_residuals(hessians=hessians, normals=normals)
    return masked_mean(residuals=residuals, mask=degenerate)


def masked_mean(*, residuals, mask):
    skipped = tf.math.reduce_sum(input_tensor=tf.cast(x=mask, dtype=tf.int64))
    valid = tf.cast(x=tf.size(input=mask, out_type=tf.int64) - skipped, dtype=tf.float64)
    loss = tf.math.divide_no_nan(x=tf.math.reduce_sum(input_tensor=residuals), y=valid)
    return loss, skipped
