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

from dudf.core.config import DudfConfig
from dudf.core.shapes import AnalyticShape, OpenDisk, Plane, shape_modules, Sphere, Torus

# Require AnalyticShape
from dudf.core.field_math import AnalyticField, analytic_scaled_field, analytic_udf, \
    invert_scaled_distance, phi, recover_distance_sqrt, scaled_distance, ScalingParams


__all__ = [
    'AnalyticField', 'analytic_scaled_field', 'analytic_udf', 'AnalyticShape', 'DudfConfig',
    'invert_scaled_distance', 'OpenDisk', 'phi', 'Plane', 'recover_distance_sqrt',
    'scaled_distance', 'ScalingParams', 'shape_modules', 'Sphere', 'Torus'
]
