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
from tqdm import tqdm

from dudf import DudfError
from dudf.core.field_math import ScalingParams
from dudf.core.objectives import LossWeights
from dudf.execution.trainer import train
from dudf.metrics import evaluate_reconstruction
from dudf.reconstruction import reconstruct_mesh


columns = ('config_id', 'time', 'l1cd_x1e3', 'l2cd_x1e3', 'nc', 'failed', 'error')


class AblationCell(object):
    """
    One configuration of an ablation matrix.
    """

    def __init__(self, *, config_id, config):
        self.config_id = config_id
        self.config = config

    def __repr__(self):
        return 'AblationCell({})'.format(self.config_id)


def parse_toggle(toggle):
    """
    Parses a loss toggle like `lambda_g=0` or `lambda_mu,lambda_sigma=0` into weight overrides.
    """
    if '=' not in toggle:
        raise DudfError.value(name='ablation', argument='toggle', value=toggle, hint='no =')
    names, value = toggle.split('=', 1)
    try:
        value = float(value)
    except ValueError:
        raise DudfError.value(name='ablation', argument='toggle', value=toggle)
    overrides = dict()
    for name in names.split(','):
        name = name.strip()
        if name not in LossWeights.names:
            raise DudfError.value(
                name='ablation', argument='toggle', value=name,
                hint='not in {{{}}}'.format(','.join(LossWeights.names))
            )
        overrides[name] = value
    return overrides


def ablation_matrix(base, *, alphas=(), toggles=(), targets=()):
    """
    Expands alpha values, loss toggles and target variants into configurations. Toggle and
    target rows come with an unmodified baseline row for comparison.

    Args:
        base (TrainConfig): Configuration every cell derives from
            (<span style="color:#C00000"><b>required</b></span>).
        alphas (list[float]): Scaling parameters, one row each
            (<span style="color:#00C000"><b>default</b></span>: none).
        toggles (list[string]): Loss weight overrides, one row each
            (<span style="color:#00C000"><b>default</b></span>: none).
        targets (list["scaled" | "distance"]): Learned field variants, one row each
            (<span style="color:#00C000"><b>default</b></span>: none).
    """
    if len(alphas) == 0 and len(toggles) == 0 and len(targets) == 0:
        raise DudfError.required(name='ablation', argument='matrix', expected='nonempty')
    cells = list()
    for alpha in alphas:
        cells.append(AblationCell(
            config_id='alpha={:g}'.format(alpha),
            config=base.replace(params=ScalingParams(alpha=alpha))
        ))
    if len(toggles) > 0 or len(targets) > 0:
        cells.append(AblationCell(config_id='baseline', config=base))
    for toggle in toggles:
        cells.append(AblationCell(
            config_id=toggle, config=base.replace(weights=base.weights.replace(
                **parse_toggle(toggle)
            ))
        ))
    for target in targets:
        cells.append(AblationCell(
            config_id='target={}'.format(target), config=base.replace(target=target)
        ))
    return cells


def run_cell(cell, cloud, reference, *, resolution, samples, seed):
    """
    Trains, reconstructs and evaluates one cell, returning its result row.
    """
    start = time.monotonic()
    net, _ = train(cloud, cell.config)
    seconds = time.monotonic() - start
    mesh = reconstruct_mesh(net, resolution, cell.config.params, target=cell.config.target)
    report = evaluate_reconstruction(mesh, reference, n=samples, seed=seed, resolution=resolution)
    return dict(
        config_id=cell.config_id, time=seconds, l1cd_x1e3=report.l1cd_x1e3,
        l2cd_x1e3=report.l2cd_x1e3, nc=(np.nan if report.nc is None else report.nc),
        failed=report.failed, error=('empty reconstruction' if report.failed else '')
    )


def run_ablation(cells, cloud, reference, *, resolution, samples, seed=0, use_tqdm=False):
    """
    Runs every cell, recording failing cells instead of aborting.

    Returns:
        Results table (pandas.DataFrame) with one row per cell.
    """
    logger = logging.getLogger(__name__)
    rows = list()
    iterator = tqdm(iterable=cells, desc='Ablation') if use_tqdm else cells
    for cell in iterator:
        try:
            row = run_cell(
                cell, cloud, reference, resolution=resolution, samples=samples, seed=seed
            )
        except DudfError as exc:
            logger.warning("Ablation cell {} failed: {}".format(cell.config_id, exc))
            row = dict(
                config_id=cell.config_id, time=np.nan, l1cd_x1e3=np.nan, l2cd_x1e3=np.nan,
                nc=np.nan, failed=True, error=str(exc)
            )
        rows.append(row)
        logger.info("Ablation cell {}: {}".format(cell.config_id, row))
    return pd.DataFrame.from_records(data=rows, columns=columns)
