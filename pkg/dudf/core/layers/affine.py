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


class Affine(JetLayer):
    """
    Affine layer u = W v + b with weights W of shape (output size, input size) (specification
    key: `affine`).

    Args:
        weights (array): Initial weight matrix
            (<span style="color:#C00000"><b>required</b></span>).
        bias (array): Initial bias vector (<span style="color:#C00000"><b>required</b></span>).
        name (string): Layer name (<span style="color:#00C000"><b>default</b></span>: "affine").
    """

    def __init__(self, *, weights, bias, name='affine'):
        super().__init__(name=name)

        weights = tf.convert_to_tensor(weights, dtype=tf.float64)
        bias = tf.convert_to_tensor(bias, dtype=tf.float64)
        if weights.shape.rank != 2 or bias.shape.rank != 1 or weights.shape[0] != bias.shape[0]:
            raise DudfError.mismatch(
                name=name, argument='bias', value1=tuple(weights.shape), value2=tuple(bias.shape)
            )
        self.weights = tf.Variable(initial_value=weights, trainable=True, name='weights')
        self.bias = tf.Variable(initial_value=bias, trainable=True, name='bias')

    @property
    def input_size(self):
        return int(self.weights.shape[1])

    @property
    def output_size(self):
        return int(self.weights.shape[0])

    @property
    def parameters(self):
        return [self.weights, self.bias]

    def apply(self, *, x):
        return tf.linalg.matmul(a=x, b=self.weights, transpose_b=True) + self.bias

    def apply_jet(self, *, value, jacobian=None, hessian=None):
        value = self.apply(x=value)
        if jacobian is not None:
            jacobian = tf.einsum('oi,bij->boj', self.weights, jacobian)
        if hessian is not None:
            hessian = tf.einsum('oi,bijk->bojk', self.weights, hessian)
        return value, jacobian, hessian
