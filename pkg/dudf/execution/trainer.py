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
import time

import numpy as np
import pandas as pd
import tensorflow as tf
from tqdm import tqdm

from dudf import DudfError, TrainingError
from dudf.core.config import enable_determinism
from dudf.core.field_math import ScalingParams
from dudf.core.networks import init_siren
from dudf.core.objectives import LossWeights, loss_terms, terms
from dudf.core.optimizers import adam_step, clip_gradients, OptimizerState
from dudf.core.parameters import check_phases, default_phases, LearningRateSchedule
from dudf.sampling import build_index, sample_batch


class TrainConfig(object):
    """
    Immutable training configuration.

    Args:
        iterations (int >= 0): Optimization steps
            (<span style="color:#00C000"><b>default</b></span>: 1500).
        batch_size (int > 0): Samples per iteration, divisible by three
            (<span style="color:#00C000"><b>default</b></span>: 3000).
        params (ScalingParams): Distance scaling
            (<span style="color:#00C000"><b>default</b></span>: alpha 100).
        weights (LossWeights): Loss weights
            (<span style="color:#00C000"><b>default</b></span>: LossWeights defaults).
        lr_phases (list[LearningRatePhase]): Learning rate phases, the last of several phases
            trains the refinement loss only
            (<span style="color:#00C000"><b>default</b></span>: thirds at 1e-4, 1e-5 and
            cosine-decayed 1e-7).
        seed (int): Seed for initialization and sampling
            (<span style="color:#00C000"><b>default</b></span>: 0).
        deterministic (bool): Whether bit-identical reruns are required
            (<span style="color:#00C000"><b>default</b></span>: false).
        hidden_layers (int > 0): Sine layers (<span style="color:#00C000"><b>default</b></span>:
            4).
        width (int > 0): Units per sine layer (<span style="color:#00C000"><b>default</b></span>:
            64).
        omega0 (float > 0.0): Sine frequency scale
            (<span style="color:#00C000"><b>default</b></span>: 30.0).
        sigma (float > 0.0): Near-surface displacement deviation
            (<span style="color:#00C000"><b>default</b></span>: 0.01).
        target ("scaled" | "distance"): Learned field, the scaled or the raw unsigned distance
            (<span style="color:#00C000"><b>default</b></span>: "scaled").
        clip_norm (float > 0.0): Global gradient norm threshold
            (<span style="color:#00C000"><b>default</b></span>: 10.0).
        max_degenerate (0.0 <= float <= 1.0): Largest tolerated share of degenerate alignment
            samples per batch (<span style="color:#00C000"><b>default</b></span>: 0.5).
    """

    def __init__(
        self, *, iterations=1500, batch_size=3000, params=None, weights=None, lr_phases=None,
        seed=0, deterministic=False, hidden_layers=4, width=64, omega0=30.0, sigma=0.01,
        target='scaled', clip_norm=10.0, max_degenerate=0.5
    ):
        if not isinstance(iterations, int) or iterations < 0:
            raise DudfError.value(name='TrainConfig', argument='iterations', value=iterations)
        if not isinstance(batch_size, int) or batch_size <= 0 or batch_size % 3 != 0:
            raise DudfError.value(
                name='TrainConfig', argument='batch_size', value=batch_size,
                hint='not a positive multiple of 3'
            )
        if target not in ('scaled', 'distance'):
            raise DudfError.value(name='TrainConfig', argument='target', value=target)
        for name, value in (('omega0', omega0), ('sigma', sigma), ('clip_norm', clip_norm)):
            if not isinstance(value, (int, float)) or value <= 0.0:
                raise DudfError.value(name='TrainConfig', argument=name, value=value, hint='<= 0.0')
        if not 0.0 <= max_degenerate <= 1.0:
            raise DudfError.value(
                name='TrainConfig', argument='max_degenerate', value=max_degenerate
            )
        for name, value in (('hidden_layers', hidden_layers), ('width', width)):
            if not isinstance(value, int) or value < 1:
                raise DudfError.value(name='TrainConfig', argument=name, value=value, hint='< 1')

        values = dict(
            iterations=iterations, batch_size=batch_size,
            params=(ScalingParams() if params is None else params),
            weights=(LossWeights() if weights is None else weights),
            lr_phases=check_phases(default_phases if lr_phases is None else lr_phases),
            seed=seed, deterministic=bool(deterministic), hidden_layers=hidden_layers,
            width=width, omega0=float(omega0), sigma=float(sigma), target=target,
            clip_norm=float(clip_norm), max_degenerate=float(max_degenerate)
        )
        for name, value in values.items():
            super().__setattr__(name, value)

    def replace(self, **kwargs):
        values = self.to_dict()
        for name in kwargs:
            if name not in values:
                raise DudfError.invalid(name='TrainConfig', argument=name)
        values.update(kwargs)
        return TrainConfig(**values)

    def to_dict(self):
        return dict(
            iterations=self.iterations, batch_size=self.batch_size, params=self.params,
            weights=self.weights, lr_phases=self.lr_phases, seed=self.seed,
            deterministic=self.deterministic, hidden_layers=self.hidden_layers, width=self.width,
            omega0=self.omega0, sigma=self.sigma, target=self.target, clip_norm=self.clip_norm,
            max_degenerate=self.max_degenerate
        )

    def __setattr__(self, name, value):
        raise NotImplementedError


class TrainingLog(object):
    """
    Per-iteration loss records, written as one whitespace-separated line per iteration in the
    column order of `columns`.
    """

    columns = (
        'iteration', 'phase', 'lr', 'total', 'eikonal', 'dirichlet', 'neumann', 'mcurv',
        'refinement', 'degenerate', 'grad_norm', 'clipped'
    )

    def __init__(self):
        self.records = list()

    def __len__(self):
        return len(self.records)

    def append(self, **record):
        assert set(record) == set(self.columns)
        self.records.append(record)

    def to_frame(self):
        return pd.DataFrame.from_records(data=self.records, columns=self.columns)

    def to_text(self):
        lines = ['# ' + ' '.join(self.columns)]
        for record in self.records:
            lines.append(
                '{iteration} {phase} {lr:.9g} {total:.9g} {eikonal:.9g} {dirichlet:.9g} '
                '{neumann:.9g} {mcurv:.9g} {refinement:.9g} {degenerate} {grad_norm:.9g} '
                '{clipped}'.format(**record)
            )
        return '\n'.join(lines) + '\n'

    def write(self, path):
        with open(path, 'w') as filehandle:
            filehandle.write(self.to_text())

    def plot(self, path):
        import matplotlib
        matplotlib.use('Agg')
        import matplotlib.pyplot as plt

        frame = self.to_frame()
        figure, axis = plt.subplots(figsize=(8, 5))
        for term in terms:
            values = frame[term].to_numpy()
            if np.any(values > 0.0):
                axis.plot(frame['iteration'], values, label=term)
        axis.set_yscale('log')
        axis.set_xlabel('iteration')
        axis.set_ylabel('unweighted loss')
        axis.legend()
        figure.savefig(path)
        plt.close(figure)


class Trainer(object):
    """
    Optimizes a network on an oriented point cloud.

    Args:
        net (SirenNetwork): Network trained in place
            (<span style="color:#C00000"><b>required</b></span>).
        config (TrainConfig): Training configuration
            (<span style="color:#C00000"><b>required</b></span>).
    """

    def __init__(self, *, net, config):
        self.net = net
        self.config = config
        self.schedule = LearningRateSchedule(phases=config.lr_phases, iterations=config.iterations)
        self.state = OptimizerState.zeros_like(parameters=net.parameters)
        if config.deterministic:
            enable_determinism()
        self.compute = tf.function(func=self.compute_gradients)

    def loss_phase(self, iteration):
        if len(self.schedule.phases) > 1 and self.schedule.is_final_phase(iteration):
            return 2
        return 1

    def compute_gradients(self, positions, distances, normals, phase):
        parameters = self.net.parameters
        with tf.GradientTape() as tape:
            result = loss_terms(
                net=self.net, positions=positions, distances=distances, normals=normals,
                surface_size=self.config.batch_size // 3, weights=self.config.weights,
                alpha=self.config.params.alpha, target=self.config.target, phase=phase
            )
        gradients = tape.gradient(target=result['total'], sources=parameters)
        gradients = [
            tf.zeros_like(input=p) if g is None else g for p, g in zip(parameters, gradients)
        ]
        return result, gradients

    def step(self, *, iteration, batch):
        """
        One optimization step on a batch, returning its log record.
        """
        phase = self.loss_phase(iteration)
        learning_rate = self.schedule.value(iteration)
        result, gradients = self.compute(
            tf.constant(batch.positions(), dtype=tf.float64),
            tf.constant(batch.distances(), dtype=tf.float64),
            tf.constant(batch.surface_normals, dtype=tf.float64), phase
        )
        values = {name: float(result[name].numpy()) for name in terms + ('total',)}

        if not np.isfinite(values['total']):
            term = next((name for name in terms if not np.isfinite(values[name])), 'total')
            invalid = np.flatnonzero(~np.isfinite(result['per_sample'].numpy()))
            raise TrainingError(
                "Non-finite loss", iteration=iteration, term=term,
                index=(int(invalid[0]) if invalid.size > 0 else None)
            )
        degenerate = int(result['degenerate'].numpy())
        if degenerate > self.config.max_degenerate * batch.size:
            raise TrainingError(
                "{} of {} surface samples have a degenerate Hessian".format(
                    degenerate, batch.size
                ), iteration=iteration, term='mcurv'
            )
        if degenerate > 0:
            logging.getLogger(__name__).debug(
                "Skipped {} degenerate alignment samples at iteration {}.".format(
                    degenerate, iteration
                )
            )

        gradients, grad_norm, clipped = clip_gradients(
            gradients, threshold=self.config.clip_norm, iteration=iteration
        )
        try:
            parameters, self.state = adam_step(
                params=self.net.parameters, grads=gradients, state=self.state, lr=learning_rate
            )
        except TrainingError as exc:
            raise TrainingError(
                "Non-finite gradient", iteration=iteration, term='gradient', index=exc.index
            )
        self.net.assign(values=parameters)

        return dict(
            iteration=iteration, phase=phase, lr=learning_rate, degenerate=degenerate,
            grad_norm=grad_norm, clipped=int(clipped), **values
        )


def train(cloud, config, *, net=None, use_tqdm=False, callback=None):
    """
    Trains a sine network to the scaled unsigned distance of a point cloud.

    Args:
        cloud (OrientedPointCloud): Normalized oriented cloud
            (<span style="color:#C00000"><b>required</b></span>).
        config (TrainConfig): Training configuration
            (<span style="color:#C00000"><b>required</b></span>).
        net (SirenNetwork): Network to continue training
            (<span style="color:#00C000"><b>default</b></span>: initialized from the config).
        use_tqdm (bool): Whether to display a progress bar
            (<span style="color:#00C000"><b>default</b></span>: false).
        callback (callable[iteration, record] -> bool): Called after every iteration, training
            stops if it returns false (<span style="color:#00C000"><b>default</b></span>: none).

    Returns:
        Tuple of the trained network and the `TrainingLog`.
    """
    if net is None:
        net = init_siren(
            hidden_layers=config.hidden_layers, width=config.width, omega0=config.omega0,
            seed=config.seed
        )
    log = TrainingLog()
    if config.iterations == 0:
        return net, log

    if np.abs(cloud.positions).max() > 1.0:
        raise DudfError.invalid(
            name='train', argument='cloud', condition='points outside the domain cube'
        )
    index = build_index(cloud)
    rng = np.random.default_rng(seed=config.seed)
    trainer = Trainer(net=net, config=config)

    iterations = range(config.iterations)
    if use_tqdm:
        iterations = tqdm(iterable=iterations, desc='Iterations', postfix=dict(loss='n/a'))
    start = time.monotonic()
    for iteration in iterations:
        batch = sample_batch(
            cloud=cloud, index=index, n_total=config.batch_size, sigma=config.sigma, seed=rng
        )
        record = trainer.step(iteration=iteration, batch=batch)
        log.append(**record)
        if use_tqdm:
            iterations.set_postfix(loss='{:.4g}'.format(record['total']))
        if callback is not None and not callback(iteration, record):
            break

    logging.getLogger(__name__).info(
        "Trained {} iterations in {:.1f}s, final loss {:.4g}.".format(
            len(log), time.monotonic() - start, log.records[-1]['total']
        )
    )
    return net, log
