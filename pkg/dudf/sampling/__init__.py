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

from dudf.sampling.cloud import cube_transform, CubeTransform, load_cloud, load_points, \
    normalize_to_cube, OrientedPointCloud
from dudf.sampling.index import approx_udf, build_index, SpatialIndex

# Require OrientedPointCloud, SpatialIndex
from dudf.sampling.batch import sample_batch, sample_mesh_surface, TrainingBatch, TrainingSample


__all__ = [
    'approx_udf', 'build_index', 'cube_transform', 'CubeTransform', 'load_cloud', 'load_points',
    'normalize_to_cube', 'OrientedPointCloud', 'sample_batch', 'sample_mesh_surface',
    'SpatialIndex', 'TrainingBatch', 'TrainingSample'
]
