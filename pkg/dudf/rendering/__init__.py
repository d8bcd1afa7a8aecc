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

from dudf.rendering.camera import Camera
from dudf.rendering.curvature import (
    curvatures, gaussian_curvature, mean_curvature, normal_jacobians, STENCIL_STEP
)
from dudf.rendering.eigen import EigenDecomp3, symmetric_eig3, symmetric_eig3_batch
from dudf.rendering.image import Image, write_image
from dudf.rendering.normals import surface_normal, surface_normals
from dudf.rendering.renderer import render, RenderReport
from dudf.rendering.shading import (
    blinn_phong_radiance, Material, PointLight, shade_blinn_phong, tone_map
)
from dudf.rendering.tracing import (
    clip_to_cube, RenderSettings, sphere_trace, trace_rays, TraceHit, TraceResult
)


__all__ = [
    'blinn_phong_radiance', 'Camera', 'clip_to_cube', 'curvatures', 'EigenDecomp3',
    'gaussian_curvature', 'Image', 'Material', 'mean_curvature', 'normal_jacobians',
    'PointLight', 'render', 'RenderReport', 'RenderSettings', 'shade_blinn_phong',
    'sphere_trace', 'STENCIL_STEP', 'surface_normal', 'surface_normals', 'symmetric_eig3',
    'symmetric_eig3_batch', 'tone_map', 'trace_rays', 'TraceHit', 'TraceResult', 'write_image'
]
