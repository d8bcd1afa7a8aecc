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


class JetLayer(tf.Module):
    """
    Base class for layers propagating second-order input jets.

    A jet of a layer input with n components over a batch of B points is the triple of values
    (B, n), input Jacobians (B, n, 3) and input Hessians (B, n, 3, 3), where Jacobian and Hessian
    may be None for lower orders.

    Args:
        name (string): Layer name (<span style="color:#00C000"><b>default</b></span>: class
            name).
    """

    def __init__(self, *, name=None):
        super().__init__(name=name)

    @property
    def parameters(self):
        return list()

    def apply(self, *, x):
        raise NotImplementedError

    def apply_jet(self, *, value, jacobian=None, hessian=None):
        raise NotImplementedError
