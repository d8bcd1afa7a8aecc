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

import numpy as np
import tensorflow as tf

from dudf import DudfError, TrainingError
from dudf.core.layers import Affine, Sine
from dudf.core.networks.jet import Jet2


# Points per jet evaluation chunk of the numpy convenience interface
DEFAULT_CHUNK = 16384


class ParameterGradients(object):
    """
    Gradients congruent with the parameters of a network, ordered as `SirenNetwork.parameters`.
    """

    def __init__(self, *, gradients):
        self.gradients = list(gradients)

    def __len__(self):
        return len(self.gradients)

    def __iter__(self):
        return iter(self.gradients)

    def __getitem__(self, index):
        return self.gradients[index]

    def scale(self, factor):
        return ParameterGradients(gradients=[factor * g for g in self.gradients])

    def global_norm(self):
        return float(tf.linalg.global_norm(t_list=self.gradients).numpy())

    def numpy(self):
        return [g.numpy() for g in self.gradients]


class SirenNetwork(tf.Module):
    """
    Sine-activated multilayer perceptron from 3D points to a scalar field value, with exact
    input gradients and Hessians by layerwise jet propagation.

    Args:
        parameters (list[(array, array)]): Per-layer weight matrix (output x input) and bias,
            input size 3 for the first and output size 1 for the last layer
            (<span style="color:#C00000"><b>required</b></span>).
        omega0 (float > 0.0): Frequency scale of every sine layer
            (<span style="color:#00C000"><b>default</b></span>: 30.0).
        seed (int): Seed the parameters were initialized with, kept for checkpoints
            (<span style="color:#00C000"><b>default</b></span>: none).
        name (string): Module name (<span style="color:#00C000"><b>default</b></span>: "siren").
    """

    def __init__(self, *, parameters, omega0=30.0, seed=None, name='siren'):
        super().__init__(name=name)

        parameters = list(parameters)
        if len(parameters) < 2:
            raise DudfError.value(
                name='SirenNetwork', argument='parameters', value=len(parameters), hint='< 2 layers'
            )
        self.omega0 = float(omega0)
        self.seed = seed

        self.affine_layers = list()
        input_size = 3
        for n, (weights, bias) in enumerate(parameters):
            layer = Affine(weights=weights, bias=bias, name='affine{}'.format(n))
            if layer.input_size != input_size:
                raise DudfError.mismatch(
                    name='SirenNetwork', argument='layer {}'.format(n), value1=input_size,
                    value2=layer.input_size
                )
            input_size = layer.output_size
            self.affine_layers.append(layer)
        if input_size != 1:
            raise DudfError.mismatch(
                name='SirenNetwork', argument='output size', value1=1, value2=input_size
            )
        self.sine = Sine(omega0=self.omega0)

    @property
    def hidden_layers(self):
        return len(self.affine_layers) - 1

    @property
    def width(self):
        return self.affine_layers[0].output_size

    @property
    def parameters(self):
        """Weights and biases in layer order: W0, b0, W1, b1, ..."""
        return [variable for layer in self.affine_layers for variable in layer.parameters]

    def layer_arrays(self):
        return [(layer.weights.numpy(), layer.bias.numpy()) for layer in self.affine_layers]

    def assign(self, *, values):
        values = list(values)
        if len(values) != len(self.parameters):
            raise DudfError.mismatch(
                name='SirenNetwork.assign', argument='values', value1=len(self.parameters),
                value2=len(values)
            )
        for variable, value in zip(self.parameters, values):
            variable.assign(value=value)

    def copy(self):
        return SirenNetwork(parameters=self.layer_arrays(), omega0=self.omega0, seed=self.seed)

    def apply(self, *, x):
        """Field values (B,) for a (B, 3) float64 tensor."""
        for layer in self.affine_layers[:-1]:
            x = self.sine.apply(x=layer.apply(x=x))
        return self.affine_layers[-1].apply(x=x)[:, 0]

    def apply_jet(self, *, x, order=2):
        """
        Jet of the field for a (B, 3) float64 tensor, gradient included for order >= 1 and
        Hessian for order 2.
        """
        if order not in (0, 1, 2):
            raise DudfError.value(name='SirenNetwork.apply_jet', argument='order', value=order)
        batch_size = tf.shape(input=x)[0]
        value = x
        jacobian = hessian = None
        if order >= 1:
            jacobian = tf.eye(num_rows=3, batch_shape=[batch_size], dtype=tf.float64)
        if order == 2:
            hessian = tf.zeros(shape=(batch_size, 3, 3, 3), dtype=tf.float64)

        for layer in self.affine_layers[:-1]:
            value, jacobian, hessian = layer.apply_jet(
                value=value, jacobian=jacobian, hessian=hessian
            )
            value, jacobian, hessian = self.sine.apply_jet(
                value=value, jacobian=jacobian, hessian=hessian
            )
        value, jacobian, hessian = self.affine_layers[-1].apply_jet(
            value=value, jacobian=jacobian, hessian=hessian
        )

        value = value[:, 0]
        gradient = None if jacobian is None else jacobian[:, 0]
        if hessian is not None:
            hessian = hessian[:, 0]
            hessian = 0.5 * (hessian + tf.linalg.matrix_transpose(a=hessian))
        return Jet2(value=value, gradient=gradient, hessian=hessian)

    def forward(self, x, *, chunk=DEFAULT_CHUNK):
        """
        Field value(s) for a 3-vector or a (B, 3) array, returned as float or float64 array.
        """
        return forward(self, x, chunk=chunk)

    def forward_jet(self, x, order=2, *, chunk=DEFAULT_CHUNK):
        """
        Jet for a 3-vector or a (B, 3) array, returned with numpy entries.
        """
        return forward_jet(self, x, order=order, chunk=chunk)


def init_siren(hidden_layers, width, omega0=30.0, seed=0):
    """
    Initializes a sine network: first layer weights uniform in [-1/3, 1/3], later layers uniform
    in [-sqrt(6 / fan_in) / omega0, sqrt(6 / fan_in) / omega0], zero biases.

    Args:
        hidden_layers (int >= 1): Number of sine layers
            (<span style="color:#C00000"><b>required</b></span>).
        width (int >= 1): Units per sine layer
            (<span style="color:#C00000"><b>required</b></span>).
        omega0 (float > 0.0): Frequency scale
            (<span style="color:#00C000"><b>default</b></span>: 30.0).
        seed (int): Random seed (<span style="color:#00C000"><b>default</b></span>: 0).
    """
    if not isinstance(hidden_layers, int) or hidden_layers < 1:
        raise DudfError.value(
            name='init_siren', argument='hidden_layers', value=hidden_layers, hint='< 1'
        )
    if not isinstance(width, int) or width < 1:
        raise DudfError.value(name='init_siren', argument='width', value=width, hint='< 1')
    if not isinstance(omega0, (int, float)) or omega0 <= 0.0:
        raise DudfError.value(name='init_siren', argument='omega0', value=omega0, hint='<= 0.0')

    rng = np.random.default_rng(seed=seed)
    sizes = [3] + [width] * hidden_layers + [1]
    parameters = list()
    for n, (fan_in, fan_out) in enumerate(zip(sizes[:-1], sizes[1:])):
        if n == 0:
            bound = 1.0 / fan_in
        else:
            bound = np.sqrt(6.0 / fan_in) / omega0
        weights = rng.uniform(low=-bound, high=bound, size=(fan_out, fan_in))
        parameters.append((weights, np.zeros(shape=(fan_out,))))

    logging.getLogger(__name__).debug(
        "Initialized sine network {}x{} with omega0={}, seed={}.".format(
            hidden_layers, width, omega0, seed
        )
    )
    return SirenNetwork(parameters=parameters, omega0=omega0, seed=seed)


def _chunks(*, x, chunk):
    points = np.asarray(x, dtype=np.float64)
    single = points.shape == (3,)
    if single:
        points = points[None, :]
    if points.ndim != 2 or points.shape[1] != 3:
        raise DudfError.value(name='SirenNetwork', argument='x.shape', value=points.shape)
    if not np.all(np.isfinite(points)):
        raise DudfError.value(name='SirenNetwork', argument='x', value='non-finite point')
    starts = range(0, max(points.shape[0], 1), chunk)
    return single, [tf.constant(points[s: s + chunk], dtype=tf.float64) for s in starts]


def forward(net, x, *, chunk=DEFAULT_CHUNK):
    """
    Evaluates the field at a 3-vector (returns float) or at a (B, 3) batch (returns array).
    """
    single, batches = _chunks(x=x, chunk=chunk)
    values = np.concatenate([net.apply(x=batch).numpy() for batch in batches])
    return float(values[0]) if single else values


def forward_jet(net, x, order=2, *, chunk=DEFAULT_CHUNK):
    """
    Evaluates value, gradient and Hessian at a 3-vector or a (B, 3) batch.
    """
    single, batches = _chunks(x=x, chunk=chunk)
    jets = [net.apply_jet(x=batch, order=order).numpy() for batch in batches]
    jet = Jet2(
        value=np.concatenate([j.value for j in jets]),
        gradient=(None if order < 1 else np.concatenate([j.gradient for j in jets])),
        hessian=(None if order < 2 else np.concatenate([j.hessian for j in jets]))
    )
    if single:
        return Jet2(
            value=float(jet.value[0]), gradient=(None if order < 1 else jet.gradient[0]),
            hessian=(None if order < 2 else jet.hessian[0])
        )
    return jet


def loss_gradients(net, loss, inputs):
    """
    Reverse-mode gradients of a scalar loss built from network jets.

    Args:
        net (SirenNetwork): Network (<span style="color:#C00000"><b>required</b></span>).
        loss (callable[net, inputs] -> scalar | (scalar, per-sample))): Loss function of TF ops,
            optionally also returning per-sample contributions to locate non-finite points
            (<span style="color:#C00000"><b>required</b></span>).
        inputs (object): Loss inputs passed through
            (<span style="color:#C00000"><b>required</b></span>).

    Returns:
        Tuple of the loss value (float) and `ParameterGradients`.
    """
    parameters = net.parameters
    with tf.GradientTape() as tape:
        result = loss(net, inputs)
    if isinstance(result, tuple):
        value, per_sample = result
    else:
        value, per_sample = result, None

    if not np.isfinite(value.numpy()):
        index = None
        if per_sample is not None:
            invalid = np.flatnonzero(~np.isfinite(per_sample.numpy()))
            if invalid.size > 0:
                index = int(invalid[0])
        raise TrainingError("Non-finite loss value", term='loss', index=index)

    gradients = tape.gradient(target=value, sources=parameters)
    gradients = [
        tf.zeros_like(input=p) if g is None else g for p, g in zip(parameters, gradients)
    ]
    return float(value.numpy()), ParameterGradients(gradients=gradients)
