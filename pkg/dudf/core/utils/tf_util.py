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


def is_tensor(*, x):
    return isinstance(x, (tf.Tensor, tf.Variable))


def float64(x):
    if is_tensor(x=x):
        if x.dtype != tf.float64:
            x = tf.cast(x=x, dtype=tf.float64)
        return x
    return tf.convert_to_tensor(value=x, dtype=tf.float64)


def safe_sqrt(x):
    # Zero gradient instead of inf at x == 0
    positive = tf.math.greater(x=x, y=0.0)
    safe = tf.where(condition=positive, x=x, y=tf.ones_like(input=x))
    return tf.where(condition=positive, x=tf.math.sqrt(x=safe), y=tf.zeros_like(input=x))


def safe_norm(x, axis=-1):
    return safe_sqrt(tf.math.reduce_sum(input_tensor=tf.math.square(x=x), axis=axis))


def scaled_distance(d, alpha):
    return d * tf.math.tanh(x=(alpha * d))


def phi(d, alpha):
    tanh = tf.math.tanh(x=(alpha * d))
    return tanh + alpha * d * (1.0 - tanh * tanh)
