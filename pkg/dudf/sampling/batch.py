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

from dudf import DudfError
from dudf.sampling.cloud import OrientedPointCloud


# Resampling attempts for near-surface displacements leaving the domain cube
MAX_DISPLACEMENT_ATTEMPTS = 10


class TrainingSample(object):
    """
    One training point with its approximate unsigned distance and, on the surface, its normal.
    """

    def __init__(self, *, position, target_distance, normal=None):
        self.position = position
        self.target_distance = target_distance
        self.normal = normal

    def __repr__(self):
        return 'TrainingSample(position={}, target_distance={}, normal={})'.format(
            self.position, self.target_distance, self.normal
        )


class TrainingBatch(object):
    """
    Equally sized surface, near-surface and far-field sample groups.

    Args:
        surface_positions ((n, 3) array): Surface points
            (<span style="color:#C00000"><b>required</b></span>).
        surface_normals ((n, 3) array): Surface normals
            (<span style="color:#C00000"><b>required</b></span>).
        near_positions ((n, 3) array): Displaced surface points
            (<span style="color:#C00000"><b>required</b></span>).
        near_targets ((n,) array): Distances to the undisplaced points
            (<span style="color:#C00000"><b>required</b></span>).
        far_positions ((n, 3) array): Uniform domain points
            (<span style="color:#C00000"><b>required</b></span>).
        far_targets ((n,) array): Nearest-neighbour distances
            (<span style="color:#C00000"><b>required</b></span>).
        near_parents ((n, 3) array): Undisplaced points of the near group
            (<span style="color:#00C000"><b>default</b></span>: none).
    """

    def __init__(
        self, *, surface_positions, surface_normals, near_positions, near_targets, far_positions,
        far_targets, near_parents=None
    ):
        self.surface_positions = np.asarray(surface_positions, dtype=np.float64)
        self.surface_normals = np.asarray(surface_normals, dtype=np.float64)
        self.near_positions = np.asarray(near_positions, dtype=np.float64)
        self.near_targets = np.asarray(near_targets, dtype=np.float64)
        self.far_positions = np.asarray(far_positions, dtype=np.float64)
        self.far_targets = np.asarray(far_targets, dtype=np.float64)
        self.near_parents = near_parents

        sizes = {
            self.surface_positions.shape[0], self.surface_normals.shape[0],
            self.near_positions.shape[0], self.near_targets.shape[0],
            self.far_positions.shape[0], self.far_targets.shape[0]
        }
        if len(sizes) != 1:
            raise DudfError.value(
                name='TrainingBatch', argument='group sizes', value=sorted(sizes),
                hint='are not equal'
            )
        if np.any(self.near_targets < 0.0) or np.any(self.far_targets < 0.0):
            raise DudfError.value(name='TrainingBatch', argument='targets', value='negative')

    @property
    def size(self):
        """Samples per group."""
        return self.surface_positions.shape[0]

    def positions(self):
        """All positions, ordered surface, near, far."""
        return np.concatenate([self.surface_positions, self.near_positions, self.far_positions])

    def distances(self):
        """Approximate unsigned distances aligned with `positions()`, zero on the surface."""
        return np.concatenate([np.zeros((self.size,)), self.near_targets, self.far_targets])

    @property
    def surface(self):
        return [
            TrainingSample(position=p, target_distance=0.0, normal=n)
            for p, n in zip(self.surface_positions, self.surface_normals)
        ]

    @property
    def near(self):
        return [
            TrainingSample(position=p, target_distance=float(d))
            for p, d in zip(self.near_positions, self.near_targets)
        ]

    @property
    def far(self):
        return [
            TrainingSample(position=p, target_distance=float(d))
            for p, d in zip(self.far_positions, self.far_targets)
        ]

    def to_text(self):
        """
        Whitespace-separated records "group x y z distance nx ny nz", normals zero off-surface.
        """
        lines = ['# group x y z distance nx ny nz']
        groups = (
            ('surface', self.surface_positions, np.zeros((self.size,)), self.surface_normals),
            ('near', self.near_positions, self.near_targets, np.zeros((self.size, 3))),
            ('far', self.far_positions, self.far_targets, np.zeros((self.size, 3)))
        )
        for name, positions, distances, normals in groups:
            for p, d, n in zip(positions, distances, normals):
                lines.append('{} {:.9g} {:.9g} {:.9g} {:.9g} {:.9g} {:.9g} {:.9g}'.format(
                    name, p[0], p[1], p[2], d, n[0], n[1], n[2]
                ))
        return '\n'.join(lines) + '\n'


def _generator(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed=seed)


def sample_batch(cloud, index, n_total, sigma=0.01, seed=None):
    """
    Draws one training batch: surface points with normals, surface points displaced along their
    normal by N(0, sigma) with the displacement length as target, and uniform domain points with
    nearest-neighbour distance targets.

    Args:
        cloud (OrientedPointCloud): Normalized cloud
            (<span style="color:#C00000"><b>required</b></span>).
        index (SpatialIndex): Index over the cloud
            (<span style="color:#C00000"><b>required</b></span>).
        n_total (int > 0): Batch size, divisible by three
            (<span style="color:#C00000"><b>required</b></span>).
        sigma (float > 0.0): Displacement standard deviation
            (<span style="color:#00C000"><b>default</b></span>: 0.01).
        seed (int | numpy.random.Generator): Random seed or generator
            (<span style="color:#00C000"><b>default</b></span>: unseeded).
    """
    if not isinstance(n_total, int) or n_total <= 0 or n_total % 3 != 0:
        raise DudfError.value(
            name='sample_batch', argument='n_total', value=n_total, hint='not divisible by 3'
        )
    if sigma <= 0.0:
        raise DudfError.value(name='sample_batch', argument='sigma', value=sigma, hint='<= 0.0')
    rng = _generator(seed)
    n = n_total // 3

    surface = rng.integers(low=0, high=len(cloud), size=(n,))
    parents = rng.integers(low=0, high=len(cloud), size=(n,))

    parent_positions = cloud.positions[parents]
    parent_normals = cloud.normals[parents]
    displacements = rng.normal(loc=0.0, scale=sigma, size=(n,))
    outside = np.ones((n,), dtype=bool)
    for _ in range(MAX_DISPLACEMENT_ATTEMPTS):
        candidates = parent_positions + parent_normals * displacements[:, None]
        outside = np.any(np.abs(candidates) > 1.0, axis=1)
        if not outside.any():
            break
        displacements[outside] = rng.normal(loc=0.0, scale=sigma, size=(int(outside.sum()),))
    else:
        candidates = parent_positions + parent_normals * displacements[:, None]
        outside = np.any(np.abs(candidates) > 1.0, axis=1)
    if outside.any():
        logging.getLogger(__name__).debug(
            "{} near-surface samples kept undisplaced after {} attempts.".format(
                int(outside.sum()), MAX_DISPLACEMENT_ATTEMPTS
            )
        )
        displacements[outside] = 0.0
    near_positions = parent_positions + parent_normals * displacements[:, None]
    near_targets = np.linalg.norm(near_positions - parent_positions, axis=1)

    far_positions = rng.uniform(low=-1.0, high=1.0, size=(n, 3))
    _, far_targets = index.query(far_positions)

    return TrainingBatch(
        surface_positions=cloud.positions[surface], surface_normals=cloud.normals[surface],
        near_positions=near_positions, near_targets=near_targets, far_positions=far_positions,
        far_targets=far_targets, near_parents=parent_positions
    )


def sample_mesh_surface(mesh, n, seed=None):
    """
    Area-weighted uniform samples of a triangle mesh with face normals.

    Args:
        mesh (TriangleMesh): Mesh with consistent winding
            (<span style="color:#C00000"><b>required</b></span>).
        n (int > 0): Number of samples (<span style="color:#C00000"><b>required</b></span>).
        seed (int | numpy.random.Generator): Random seed or generator
            (<span style="color:#00C000"><b>default</b></span>: unseeded).
    """
    if not isinstance(n, int) or n <= 0:
        raise DudfError.value(name='sample_mesh_surface', argument='n', value=n, hint='<= 0')
    if mesh.is_empty():
        raise DudfError.required(name='sample_mesh_surface', argument='mesh', expected='nonempty')
    areas = mesh.face_areas()
    total = areas.sum()
    if not total > 0.0:
        raise DudfError.invalid(
            name='sample_mesh_surface', argument='mesh', condition='zero surface area'
        )
    rng = _generator(seed)

    faces = rng.choice(mesh.num_triangles, size=n, p=(areas / total))
    u = rng.uniform(size=(n,))
    v = rng.uniform(size=(n,))
    root = np.sqrt(u)
    corners = mesh.vertices[mesh.triangles[faces]]
    positions = (1.0 - root)[:, None] * corners[:, 0] + \
        (root * (1.0 - v))[:, None] * corners[:, 1] + (root * v)[:, None] * corners[:, 2]
    normals = mesh.face_normals()[faces]
    return OrientedPointCloud(positions=positions, normals=normals)
