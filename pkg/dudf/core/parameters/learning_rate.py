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

from dudf import DudfError


class LearningRatePhase(object):
    """
    Constant or cosine-decaying learning rate over a fraction of the training iterations.

    Args:
        fraction (0.0 < float <= 1.0): Share of the iterations
            (<span style="color:#C00000"><b>required</b></span>).
        learning_rate (float > 0.0): (Initial) learning rate
            (<span style="color:#C00000"><b>required</b></span>).
        cosine (bool): Whether the rate decays with a cosine shape over the phase
            (<span style="color:#00C000"><b>default</b></span>: false).
    """

    def __init__(self, *, fraction, learning_rate, cosine=False):
        if not isinstance(fraction, (int, float)) or not 0.0 < fraction <= 1.0:
            raise DudfError.value(name='LearningRatePhase', argument='fraction', value=fraction)
        if not isinstance(learning_rate, (int, float)) or not np.isfinite(learning_rate) or \
                learning_rate <= 0.0:
            raise DudfError.value(
                name='LearningRatePhase', argument='learning_rate', value=learning_rate,
                hint='<= 0.0'
            )
        super().__setattr__('fraction', float(fraction))
        super().__setattr__('learning_rate', float(learning_rate))
        super().__setattr__('cosine', bool(cosine))

    def __eq__(self, other):
        return isinstance(other, LearningRatePhase) and (
            self.fraction, self.learning_rate, self.cosine
        ) == (other.fraction, other.learning_rate, other.cosine)

    def __repr__(self):
        return 'LearningRatePhase(fraction={}, learning_rate={}, cosine={})'.format(
            self.fraction, self.learning_rate, self.cosine
        )

    def __setattr__(self, name, value):
        raise NotImplementedError


default_phases = (
    LearningRatePhase(fraction=(1.0 / 3.0), learning_rate=1e-4),
    LearningRatePhase(fraction=(1.0 / 3.0), learning_rate=1e-5),
    LearningRatePhase(fraction=(1.0 / 3.0), learning_rate=1e-7, cosine=True)
)


def check_phases(phases):
    phases = tuple(phases)
    if len(phases) == 0:
        raise DudfError.required(name='TrainConfig', argument='lr_phases')
    total = sum(phase.fraction for phase in phases)
    if abs(total - 1.0) > 1e-9:
        raise DudfError.value(
            name='TrainConfig', argument='lr_phases', value=total, hint='fractions do not sum to 1'
        )
    return phases


class LearningRateSchedule(object):
    """
    Piecewise learning rate over a fixed number of iterations.

    Args:
        phases (list[LearningRatePhase]): Consecutive phases with fractions summing to one
            (<span style="color:#C00000"><b>required</b></span>).
        iterations (int >= 0): Total number of iterations
            (<span style="color:#C00000"><b>required</b></span>).
    """

    def __init__(self, *, phases, iterations):
        self.phases = check_phases(phases)
        self.iterations = iterations

        cumulative = np.cumsum([phase.fraction for phase in self.phases])
        cumulative[-1] = 1.0
        self.boundaries = [0] + [int(round(c * iterations)) for c in cumulative]

        self.decays = list()
        for n, phase in enumerate(self.phases):
            length = self.boundaries[n + 1] - self.boundaries[n]
            if phase.cosine and length > 0:
                self.decays.append(tf.keras.optimizers.schedules.CosineDecay(
                    initial_learning_rate=phase.learning_rate, decay_steps=length
                ))
            else:
                self.decays.append(None)

    def phase_index(self, iteration):
        if not 0 <= iteration < self.iterations:
            raise DudfError.value(
                name='LearningRateSchedule', argument='iteration', value=iteration
            )
        for n in range(len(self.phases)):
            if iteration < self.boundaries[n + 1]:
                return n
        raise DudfError.unexpected()

    def is_final_phase(self, iteration):
        return self.phase_index(iteration) == len(self.phases) - 1

    def value(self, iteration):
        n = self.phase_index(iteration)
        if self.decays[n] is None:
            return self.phases[n].learning_rate
        return float(self.decays[n](iteration - self.boundaries[n]).numpy())
