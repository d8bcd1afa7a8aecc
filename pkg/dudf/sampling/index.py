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
from scipy.spatial import cKDTree

from dudf import util


class SpatialIndex(object):
    """
    Nearest-neighbour index over cloud positions, equal to a linear scan with distance ties
    broken by the lowest point index.

    Args:
        positions ((N, 3) array): Indexed points
            (<span style="color:#C00000"><b>required</b></span>).
        normals ((N, 3) array): Normals carried along for queries
            (<span style="color:#00C000"><b>default</b></span>: none).
    """

    # Candidates inspected per query for tie breaking
    candidates = 8

    def __init__(self, *, positions, normals=None):
        self.positions = np.asarray(positions, dtype=np.float64)
        self.normals = normals
        self.tree = cKDTree(data=self.positions)

    def __len__(self):
        return self.positions.shape[0]

    def query(self, x, *, workers=1):
        """
        Nearest point indices and Euclidean distances for a (B, 3) batch.
        """
        x = np.asarray(x, dtype=np.float64)
        k = min(self.candidates, len(self))
        _, indices = self.tree.query(x=x, k=k, workers=workers)
        if k == 1:
            indices = indices[:, None]
        # Exact distances, identical to a linear scan computation
        distances = np.linalg.norm(x[:, None, :] - self.positions[indices], axis=2)
        closest = distances.min(axis=1, keepdims=True)
        tied = np.where(distances == closest, indices, len(self))
        nearest = tied.min(axis=1)
        return nearest, closest[:, 0]


def build_index(cloud):
    """
    Builds a nearest-neighbour index over an oriented point cloud.
    """
    return SpatialIndex(positions=cloud.positions, normals=cloud.normals)


def approx_udf(index, x):
    """
    Approximate unsigned distance as the distance to the nearest cloud point.

    Args:
        index (SpatialIndex): Index built over the cloud
            (<span style="color:#C00000"><b>required</b></span>).
        x (3-vector | (B, 3) array): Query point(s)
            (<span style="color:#C00000"><b>required</b></span>).

    Returns:
        Tuple of distance(s), the nearest point normal(s) and the nearest point(s).
    """
    points, single = util.as_points(x=x, name='approx_udf')
    nearest, distances = index.query(points)
    normals = None if index.normals is None else index.normals[nearest]
    positions = index.positions[nearest]
    if single:
        return float(distances[0]), (None if normals is None else normals[0]), positions[0]
    return distances, normals, positions
