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


def dirichlet_loss(jets, targets):
    """
    Dirichlet loss, mean |f(x) - t(x)| with target field values t (zero on the surface).
    """
    values = tf_util.float64(jets.value)
    return tf.math.reduce_mean(input_tensor=tf.math.abs(x=(values - tf_util.float64(targets))))
