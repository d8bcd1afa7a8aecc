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
from dudf.core.objectives.eikonal import eikonal_residuals
from dudf.core.objectives.mcurv import masked_mean, mcurv_residuals
from dudf.core.objectives.refinement import refinement_loss
from dudf.core.utils import tf_util


terms = ('eikonal', 'dirichlet', 'neumann', 'mcurv', 'refinement')


def loss_terms(
    *, net, positions, distances, normals, surface_size, weights, alpha, target='scaled', phase=1
):
    """
    Loss terms of one batch as TF ops, positions ordered surface, near, far with the first
    `surface_size` rows on the surface.

    Returns:
        Dict with the weighted "total", unweighted per-term values, the "degenerate" sample
        count of the alignment term and "per_sample" residuals for locating non-finite points.
    """
    zero = tf.constant(value=0.0, dtype=tf.float64)
    if phase == 2:
        values = net.apply(x=positions[:surface_size])
        refinement = refinement_loss(
            values=values, lambda_mu=weights.lambda_mu, lambda_sigma=weights.lambda_sigma
        )
        return dict(
            total=refinement, eikonal=zero, dirichlet=zero, neumann=zero, mcurv=zero,
            refinement=refinement, degenerate=tf.constant(value=0, dtype=tf.int64),
            per_sample=values
        )
    elif phase != 1:
        raise DudfError.value(name='loss_terms', argument='phase', value=phase)

    order = 2 if weights.lambda_g > 0.0 else 1
    jet = net.apply_jet(x=positions, order=order)

    eikonal_per_sample = eikonal_residuals(
        gradients=jet.gradient, distances=distances, alpha=alpha, target=target
    )
    if target == 'scaled':
        field_targets = tf_util.scaled_distance(d=distances, alpha=alpha)
    else:
        field_targets = distances
    dirichlet_per_sample = tf.math.abs(x=(jet.value - field_targets))
    neumann_per_sample = tf_util.safe_norm(x=jet.gradient[:surface_size])

    eikonal = tf.math.reduce_mean(input_tensor=eikonal_per_sample)
    dirichlet = tf.math.reduce_mean(input_tensor=dirichlet_per_sample)
    neumann = tf.math.reduce_mean(input_tensor=neumann_per_sample)

    surface_per_sample = neumann_per_sample
    if order == 2:
        mcurv_per_sample, degenerate = mcurv_residuals(
            hessians=jet.hessian[:surface_size], normals=normals
        )
        mcurv, skipped = masked_mean(residuals=mcurv_per_sample, mask=degenerate)
        surface_per_sample = surface_per_sample + mcurv_per_sample
    else:
        mcurv = zero
        skipped = tf.constant(value=0, dtype=tf.int64)

    total = weights.lambda_e * eikonal + weights.lambda_d * dirichlet + \
        weights.lambda_n * neumann + weights.lambda_g * mcurv
    per_sample = eikonal_per_sample + dirichlet_per_sample + tf.pad(
        tensor=surface_per_sample,
        paddings=[[0, tf.shape(input=eikonal_per_sample)[0] - surface_size]]
    )
    return dict(
        total=total, eikonal=eikonal, dirichlet=dirichlet, neumann=neumann, mcurv=mcurv,
        refinement=zero, degenerate=skipped, per_sample=per_sample
    )


def total_loss(batch, net, config, *, phase=1):
    """
    Weighted training loss of a batch.

    Args:
        batch (TrainingBatch): Surface, near and far samples
            (<span style="color:#C00000"><b>required</b></span>).
        net (SirenNetwork): Network (<span style="color:#C00000"><b>required</b></span>).
        config (TrainConfig): Loss weights, scaling parameters and target variant
            (<span style="color:#C00000"><b>required</b></span>).
        phase (1 | 2): Four-term phase or refinement-only phase
            (<span style="color:#00C000"><b>default</b></span>: 1).

    Returns:
        Tuple of the total loss (float) and the breakdown dict of floats, unweighted terms plus
        the degenerate sample count.
    """
    result = loss_terms(
        net=net, positions=tf_util.float64(batch.positions()),
        distances=tf_util.float64(batch.distances()),
        normals=tf_util.float64(batch.surface_normals), surface_size=batch.size,
        weights=config.weights, alpha=config.params.alpha, target=config.target, phase=phase
    )
    breakdown = {name: float(result[name].numpy()) for name in terms}
    breakdown['degenerate'] = int(result['degenerate'].numpy())
    return float(result['total'].numpy()), breakdown
