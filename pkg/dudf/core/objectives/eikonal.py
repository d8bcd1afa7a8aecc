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

from dudf import DudfError
from dudf.core.utils import tf_util


def eikonal_residuals(*, gradients, distances, alpha, target='scaled'):
    """
    Per-sample |‖∇f‖ - φ(d)|, where the target norm is φ(d) for the scaled field and the
    indicator of d > 0 for the raw distance field.
    """
    norms = tf_util.safe_norm(x=gradients)
    if target == 'scaled':
        expected = tf_util.phi(d=distances, alpha=alpha)
    elif target == 'distance':
        expected = tf.cast(x=tf.math.greater(x=distances, y=0.0), dtype=tf.float64)
    else:
        raise DudfError.value(name='eikonal_loss', argument='target', value=target)
    return tf.math.abs(x=(norms - expected))


def eikonal_loss(jets, targets, p, *, target='scaled'):
    """
    Eikonal loss, mean over samples of |‖∇f(x)‖ - φ(d(x))|.

    Args:
        jets (Jet2): Batched jets with gradients
            (<span style="color:#C00000"><b>required</b></span>).
        targets (array): Approximate unsigned distance per sample
            (<span style="color:#C00000"><b>required</b></span>).
        p (ScalingParams): Scaling parameters (<span style="color:#C00000"><b>required</b></span>).
        target ("scaled" | "distance"): Learned field variant
            (<span style="color:#00C000"><b>default</b></span>: "scaled").
    """
    residuals = eikonal_residuals(
        gradients=tf_util.float64(jets.gradient), distances=tf_util.float64(targets),
        alpha=p.alpha, target=target
    )
    return tf.math.reduce_mean(input_tensor=residuals)
