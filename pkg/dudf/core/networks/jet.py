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
import tensorflow as tf


class Jet2(object):
    """
    Second-order jet of a scalar field: value, input gradient and input Hessian.

    Holds either a single point (value scalar, gradient (3,), hessian (3, 3)) or a batch
    (value (B,), gradient (B, 3), hessian (B, 3, 3)), as numpy arrays or TensorFlow tensors.

    Args:
        value: Field value(s) (<span style="color:#C00000"><b>required</b></span>).
        gradient: Input gradient(s) (<span style="color:#C00000"><b>required</b></span>).
        hessian: Input Hessian(s), symmetric
            (<span style="color:#00C000"><b>default</b></span>: not computed).
    """

    def __init__(self, *, value, gradient, hessian=None):
        self.value = value
        self.gradient = gradient
        self.hessian = hessian

    @property
    def is_batched(self):
        return len(self.gradient.shape) == 2

    @property
    def batch_size(self):
        return int(self.gradient.shape[0]) if self.is_batched else 1

    def numpy(self):
        """Returns a copy with all entries converted to float64 numpy arrays."""
        def convert(x):
            if x is None:
                return None
            elif isinstance(x, tf.Tensor):
                return x.numpy()
            else:
                return np.asarray(x, dtype=np.float64)

        return Jet2(
            value=convert(self.value), gradient=convert(self.gradient),
            hessian=convert(self.hessian)
        )

    def single(self, index):
        """Returns the unbatched jet of one batch entry as numpy arrays."""
        jet = self.numpy()
        assert jet.is_batched
        return Jet2(
            value=float(jet.value[index]), gradient=jet.gradient[index],
            hessian=(None if jet.hessian is None else jet.hessian[index])
        )

    def __repr__(self):
        return 'Jet2(value={}, gradient={}, hessian={})'.format(
            self.value, self.gradient, self.hessian
        )
