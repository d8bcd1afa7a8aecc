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

from dudf import DudfError, TrainingError
from dudf.core.utils import tf_util


class OptimizerState(object):
    """
    Immutable adaptive-moment optimizer state.

    Args:
        first (list[tensor]): First moment accumulators, congruent with the parameters
            (<span style="color:#C00000"><b>required</b></span>).
        second (list[tensor]): Second moment accumulators
            (<span style="color:#C00000"><b>required</b></span>).
        step (int >= 0): Number of applied updates
            (<span style="color:#00C000"><b>default</b></span>: 0).
        beta1 (0.0 <= float < 1.0): First moment decay
            (<span style="color:#00C000"><b>default</b></span>: 0.9).
        beta2 (0.0 <= float < 1.0): Second moment decay
            (<span style="color:#00C000"><b>default</b></span>: 0.999).
        epsilon (float > 0.0): Denominator offset
            (<span style="color:#00C000"><b>default</b></span>: 1e-8).
    """

    def __init__(self, *, first, second, step=0, beta1=0.9, beta2=0.999, epsilon=1e-8):
        first = [tf_util.float64(x) for x in first]
        second = [tf_util.float64(x) for x in second]
        if len(first) != len(second) or any(
            tuple(a.shape) != tuple(b.shape) for a, b in zip(first, second)
        ):
            raise DudfError.mismatch(
                name='OptimizerState', argument='second', value1=len(first), value2=len(second)
            )
        assert isinstance(step, int) and step >= 0
        assert 0.0 <= beta1 < 1.0 and 0.0 <= beta2 < 1.0 and epsilon > 0.0
        super().__setattr__('first', first)
        super().__setattr__('second', second)
        super().__setattr__('step', step)
        super().__setattr__('beta1', float(beta1))
        super().__setattr__('beta2', float(beta2))
        super().__setattr__('epsilon', float(epsilon))

    @staticmethod
    def zeros_like(parameters, **kwargs):
        zeros = [tf.zeros_like(input=tf_util.float64(p)) for p in parameters]
        return OptimizerState(first=zeros, second=list(zeros), **kwargs)

    def __setattr__(self, name, value):
        raise NotImplementedError


def adam_step(params, grads, state, lr):
    """
    Bias-corrected adaptive-moment update.

    Args:
        params (list[tensor]): Current parameters
            (<span style="color:#C00000"><b>required</b></span>).
        grads (list[tensor]): Gradients congruent with the parameters
            (<span style="color:#C00000"><b>required</b></span>).
        state (OptimizerState): Optimizer state
            (<span style="color:#C00000"><b>required</b></span>).
        lr (float > 0.0): Learning rate (<span style="color:#C00000"><b>required</b></span>).

    Returns:
        Tuple of updated parameters and updated state.
    """
    params = [tf_util.float64(p) for p in params]
    grads = [tf_util.float64(g) for g in grads]
    if len(params) != len(grads) or len(params) != len(state.first):
        raise DudfError.mismatch(
            name='adam_step', argument='grads', value1=len(params), value2=len(grads)
        )
    for n, (p, g) in enumerate(zip(params, grads)):
        if tuple(p.shape) != tuple(g.shape):
            raise DudfError.mismatch(
                name='adam_step', argument='grads[{}]'.format(n), value1=tuple(p.shape),
                value2=tuple(g.shape)
            )
        if not np.all(np.isfinite(g.numpy())):
            raise TrainingError(
                "Non-finite gradient", iteration=state.step, term='gradient', index=n
            )

    step = state.step + 1
    beta1, beta2 = state.beta1, state.beta2
    correction1 = 1.0 - beta1 ** step
    correction2 = 1.0 - beta2 ** step

    updated, first, second = list(), list(), list()
    for p, g, m, v in zip(params, grads, state.first, state.second):
        m = beta1 * m + (1.0 - beta1) * g
        v = beta2 * v + (1.0 - beta2) * tf.math.square(x=g)
        m_hat = m / correction1
        v_hat = v / correction2
        updated.append(p - lr * m_hat / (tf.math.sqrt(x=v_hat) + state.epsilon))
        first.append(m)
        second.append(v)

    state = OptimizerState(
        first=first, second=second, step=step, beta1=beta1, beta2=beta2, epsilon=state.epsilon
    )
    return updated, state
