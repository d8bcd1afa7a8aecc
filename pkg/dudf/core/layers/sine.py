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
from dudf.core.layers.layer import JetLayer


class Sine(JetLayer):
    """
    Elementwise sine activation sin(omega0 u) (specification key: `sine`).

    Args:
        omega0 (float > 0.0): Frequency scale
            (<span style="color:#00C000"><b>default</b></span>: 30.0).
        name (string): Layer name (<span style="color:#00C000"><b>default</b></span>: "sine").
    """

    def __init__(self, *, omega0=30.0, name='sine'):
        super().__init__(name=name)

        if not isinstance(omega0, (int, float)) or omega0 <= 0.0:
            raise DudfError.value(name=name, argument='omega0', value=omega0, hint='<= 0.0')
        self.omega0 = float(omega0)

    def apply(self, *, x):
        return tf.math.sin(self.omega0 * x)

    def apply_jet(self, *, value, jacobian=None, hessian=None):
        omega = self.omega0
        scaled = omega * value
        sin = tf.math.sin(scaled)
        if jacobian is None:
            return sin, None, None

        cos = tf.math.cos(scaled)
        if hessian is not None:
            outer = tf.einsum('bij,bik->bijk', jacobian, jacobian)
            hessian = omega * cos[:, :, None, None] * hessian - \
                (omega * omega) * sin[:, :, None, None] * outer
        jacobian = omega * cos[:, :, None] * jacobian
        return sin, jacobian, hessian
