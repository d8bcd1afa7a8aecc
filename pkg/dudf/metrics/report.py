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
import os

import numpy as np
import pandas as pd

from dudf import DudfError
from dudf.metrics.chamfer import chamfer, normal_consistency
from dudf.sampling import sample_mesh_surface


# Default number of points sampled from a reconstructed mesh
EVALUATION_SAMPLES = 100000


class MetricReport(object):
    """
    Reconstruction quality against ground-truth samples.

    Args:
        l1cd_x1e3 (float >= 0.0): L1 Chamfer distance times 1000
            (<span style="color:#C00000"><b>required</b></span>).
        l2cd_x1e3 (float >= 0.0): L2 Chamfer distance times 1000
            (<span style="color:#C00000"><b>required</b></span>).
        nc (float in [0, 1] | None): Normal consistency, None if the reference has no normals
            (<span style="color:#C00000"><b>required</b></span>).
        samples (int): Points sampled from the mesh
            (<span style="color:#C00000"><b>required</b></span>).
        reference_samples (int): Ground-truth points
            (<span style="color:#C00000"><b>required</b></span>).
        resolution (int): Grid resolution of the reconstruction
            (<span style="color:#00C000"><b>default</b></span>: unknown).
        failed (bool): Whether the evaluation could not run, metrics then hold sentinels
            (<span style="color:#00C000"><b>default</b></span>: false).
    """

    keys = ('l1cd_x1e3', 'l2cd_x1e3', 'nc', 'samples', 'reference_samples', 'resolution', 'failed')

    def __init__(
        self, *, l1cd_x1e3, l2cd_x1e3, nc, samples, reference_samples, resolution=None,
        failed=False
    ):
        for name, value in (('l1cd_x1e3', l1cd_x1e3), ('l2cd_x1e3', l2cd_x1e3)):
            if not value >= 0.0:
                raise DudfError.value(name='MetricReport', argument=name, value=value, hint='< 0')
        if nc is not None and not 0.0 <= nc <= 1.0:
            raise DudfError.value(name='MetricReport', argument='nc', value=nc)
        self.l1cd_x1e3 = float(l1cd_x1e3)
        self.l2cd_x1e3 = float(l2cd_x1e3)
        self.nc = None if nc is None else float(nc)
        self.samples = samples
        self.reference_samples = reference_samples
        self.resolution = resolution
        self.failed = failed

    @staticmethod
    def failure(*, reference_samples, resolution=None):
        return MetricReport(
            l1cd_x1e3=float('inf'), l2cd_x1e3=float('inf'), nc=1.0, samples=0,
            reference_samples=reference_samples, resolution=resolution, failed=True
        )

    def to_dict(self):
        return {key: getattr(self, key) for key in self.keys}

    def to_text(self):
        """
        One key=value line per field, missing values written as `none`.
        """
        lines = list()
        for key, value in self.to_dict().items():
            if value is None:
                value = 'none'
            elif isinstance(value, bool):
                value = str(value).lower()
            elif isinstance(value, float):
                value = '{:.9g}'.format(value)
            lines.append('{}={}'.format(key, value))
        return '\n'.join(lines) + '\n'

    def __repr__(self):
        return 'MetricReport(l1cd_x1e3={:.4g}, l2cd_x1e3={:.4g}, nc={})'.format(
            self.l1cd_x1e3, self.l2cd_x1e3, self.nc
        )


def append_results(path, record):
    """
    Appends one record (dict) as a row to a tab-separated results table, creating it with a
    header if missing.
    """
    frame = pd.DataFrame.from_records(data=[record])
    if os.path.isfile(path) and os.path.getsize(path) > 0:
        frame = pd.concat([pd.read_csv(path, sep='\t'), frame], ignore_index=True)
    frame.to_csv(path, sep='\t', index=False)
    return frame


def _reference(cloud):
    if isinstance(cloud, tuple):
        positions, normals = cloud
    else:
        positions, normals = cloud.positions, cloud.normals
    positions = np.asarray(positions, dtype=np.float64)
    if positions.ndim != 2 or positions.shape[0] == 0:
        raise DudfError.required(
            name='evaluate_reconstruction', argument='cloud', expected='nonempty'
        )
    return positions, normals


def evaluate_reconstruction(mesh, cloud, n=EVALUATION_SAMPLES, seed=0, *, resolution=None):
    """
    Samples the mesh surface and compares it with ground-truth points.

    Args:
        mesh (TriangleMesh): Reconstructed mesh
            (<span style="color:#C00000"><b>required</b></span>).
        cloud (OrientedPointCloud | (positions, normals | None)): Ground-truth points
            (<span style="color:#C00000"><b>required</b></span>).
        n (int > 0): Mesh samples (<span style="color:#00C000"><b>default</b></span>: 100000).
        seed (int): Sampling seed (<span style="color:#00C000"><b>default</b></span>: 0).
        resolution (int): Grid resolution echoed in the report
            (<span style="color:#00C000"><b>default</b></span>: unknown).
    """
    logger = logging.getLogger(__name__)
    positions, normals = _reference(cloud)
    if mesh.is_empty() or not mesh.face_areas().sum() > 0.0:
        logger.warning("Empty reconstruction, reporting sentinel metrics.")
        return MetricReport.failure(reference_samples=positions.shape[0], resolution=resolution)

    samples = sample_mesh_surface(mesh, n, seed=seed)
    l1 = chamfer(samples.positions, positions, order=1)
    l2 = chamfer(samples.positions, positions, order=2)
    if normals is None:
        logger.warning("Ground truth has no normals, normal consistency omitted.")
        nc = None
    else:
        nc = normal_consistency(
            positions_a=samples.positions, normals_a=samples.normals, positions_b=positions,
            normals_b=normals
        )
    return MetricReport(
        l1cd_x1e3=(1e3 * l1), l2cd_x1e3=(1e3 * l2), nc=nc, samples=n,
        reference_samples=positions.shape[0], resolution=resolution
    )
