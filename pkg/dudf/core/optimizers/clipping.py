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

import tensorflow as tf


def clip_gradients(grads, *, threshold=10.0, iteration=None):
    """
    Clips gradients to a maximum global norm.

    Returns:
        Tuple of clipped gradients, the unclipped global norm and whether clipping was applied.
    """
    clipped, norm = tf.clip_by_global_norm(t_list=list(grads), clip_norm=threshold)
    norm = float(norm.numpy())
    triggered = norm > threshold
    if triggered:
        logging.getLogger(__name__).debug(
            "Gradient global norm {:.4g} clipped to {} at iteration {}.".format(
                norm, threshold, iteration
            )
        )
    return clipped, norm, triggered
