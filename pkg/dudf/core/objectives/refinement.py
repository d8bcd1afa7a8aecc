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


def refinement_loss(values, lambda_mu, lambda_sigma):
    """
    Refinement loss on surface values, λ_μ |mean(f)| + λ_σ std(f) with population std.

    Args:
        values (array): Field values at surface samples
            (<span style="color:#C00000"><b>required</b></span>).
        lambda_mu (float >= 0.0): Mean weight (<span style="color:#C00000"><b>required</b></span>).
        lambda_sigma (float >= 0.0): Standard deviation weight
            (<span style="color:#C00000"><b>required</b></span>).
    """
    values = tf_util.float64(values)
    mean = tf.math.reduce_mean(input_tensor=values)
    variance = tf.math.reduce_mean(input_tensor=tf.math.square(x=(values - mean)))
    return lambda_mu * tf.math.abs(x=mean) + lambda_sigma * tf_util.safe_sqrt(variance)
