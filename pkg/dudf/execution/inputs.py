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

from dudf.sampling import cube_transform, load_cloud, load_points, normalize_to_cube, \
    OrientedPointCloud


def training_cloud(run, *, seed=None):
    """
    Oriented training cloud in the domain cube: surface samples of the analytic shape, or the
    input file normalized to the cube.

    Returns:
        Tuple of the cloud and the `CubeTransform` of file input, None for analytic shapes.
    """
    source = run['input']
    seed = run['train']['seed'] if seed is None else seed
    shape = run.shape()
    if shape is not None:
        positions, normals = shape.sample_surface(
            n=source['points'], rng=np.random.default_rng(seed=seed)
        )
        cloud = OrientedPointCloud(positions=positions, normals=normals)
        logging.getLogger(__name__).info("Sampled {} points of {}.".format(
            len(cloud), shape.__class__.__name__
        ))
        return cloud, None
    cloud = load_cloud(run.resolve_path(source['path']), format=source['format'])
    return normalize_to_cube(cloud, margin=source['margin'])


def reference_points(run, *, path=None):
    """
    Ground-truth positions and normals (None if unavailable) in domain-cube coordinates.

    Args:
        run (RunConfig): Run configuration (<span style="color:#C00000"><b>required</b></span>).
        path (string): Explicit reference file, used without normalization
            (<span style="color:#00C000"><b>default</b></span>: the configured input).
    """
    if path is not None:
        return load_points(path)
    source = run['input']
    shape = run.shape()
    if shape is not None:
        # Held out from the training samples by a distinct seed
        rng = np.random.default_rng(seed=(run['eval']['seed'] + 1))
        return shape.sample_surface(n=run['eval']['samples'], rng=rng)
    positions, normals = load_points(run.resolve_path(source['path']), format=source['format'])
    transform = cube_transform(positions, margin=source['margin'])
    return transform.apply(positions), normals
