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

from dudf.metrics.chamfer import chamfer, nearest_neighbors, normal_consistency
from dudf.metrics.report import (
    append_results, evaluate_reconstruction, EVALUATION_SAMPLES, MetricReport
)
from dudf.metrics.surface import surface_quality, SurfaceQuality


__all__ = [
    'append_results', 'chamfer', 'evaluate_reconstruction', 'EVALUATION_SAMPLES', 'MetricReport',
    'nearest_neighbors', 'normal_consistency', 'surface_quality', 'SurfaceQuality'
]
