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

from dudf.rendering.image import Image
from dudf.rendering.normals import NORMAL_FALLBACK, NORMAL_INVALID, surface_normals
from dudf.rendering.shading import shade_blinn_phong
from dudf.rendering.tracing import trace_rays


class RenderReport(object):
    """
    Per-image tracing statistics.

    Args:
        pixels (int): Pixel count (<span style="color:#C00000"><b>required</b></span>).
        hits (int): Pixels whose ray hit the surface
            (<span style="color:#C00000"><b>required</b></span>).
        fallbacks (int): Hit pixels shaded with the gradient fallback normal
            (<span style="color:#C00000"><b>required</b></span>).
        invalid (int): Hit pixels without a usable normal, drawn as background
            (<span style="color:#C00000"><b>required</b></span>).
        mean_steps (float): Mean marching steps per ray
            (<span style="color:#C00000"><b>required</b></span>).
    """

    def __init__(self, *, pixels, hits, fallbacks, invalid, mean_steps):
        self.pixels = pixels
        self.hits = hits
        self.fallbacks = fallbacks
        self.invalid = invalid
        self.mean_steps = mean_steps

    @property
    def hit_ratio(self):
        return self.hits / self.pixels if self.pixels > 0 else 0.0

    @property
    def fallback_ratio(self):
        return self.fallbacks / self.hits if self.hits > 0 else 0.0

    def to_text(self):
        return ''.join(
            '{}={}\n'.format(key, value) for key, value in (
                ('pixels', self.pixels), ('hits', self.hits),
                ('hit_ratio', '{:.6f}'.format(self.hit_ratio)),
                ('fallback_ratio', '{:.6f}'.format(self.fallback_ratio)),
                ('invalid', self.invalid), ('mean_steps', '{:.3f}'.format(self.mean_steps))
            )
        )

    def __repr__(self):
        return 'RenderReport(hit_ratio={:.4f}, fallback_ratio={:.4f}, invalid={})'.format(
            self.hit_ratio, self.fallback_ratio, self.invalid
        )


def render(field, p, camera, settings, *, target='scaled'):
    """
    Renders the zero level set of a scaled distance field: sphere tracing per pixel,
    eigenvector normals facing the camera, Blinn-Phong shading, background on misses.

    Args:
        field (SirenNetwork | AnalyticField): Scaled distance field
            (<span style="color:#C00000"><b>required</b></span>).
        p (ScalingParams): Scaling parameters (<span style="color:#C00000"><b>required</b></span>).
        camera (Camera): Camera (<span style="color:#C00000"><b>required</b></span>).
        settings (RenderSettings): Tracing and shading settings
            (<span style="color:#C00000"><b>required</b></span>).
        target ("scaled" | "distance"): Whether the field is the scaled or the raw distance
            (<span style="color:#00C000"><b>default</b></span>: "scaled").

    Returns:
        Tuple of the image and its render report.
    """
    origins, directions = camera.rays()
    result = trace_rays(field, p, origins, directions, settings, target=target)

    colors = np.broadcast_to(settings.background, origins.shape).copy()
    fallbacks = invalid = 0
    indices = np.flatnonzero(result.hits)
    if indices.size > 0:
        points = result.points[indices]
        normals, status = surface_normals(field, points, directions[indices])
        usable = status != NORMAL_INVALID
        fallbacks = int((status == NORMAL_FALLBACK).sum())
        invalid = int((~usable).sum())
        colors[indices[usable]] = shade_blinn_phong(
            points[usable], normals[usable], -directions[indices[usable]], settings.lights,
            settings.material
        )

    image = Image.from_float(colors.reshape(camera.height, camera.width, 3))
    report = RenderReport(
        pixels=origins.shape[0], hits=int(indices.size), fallbacks=fallbacks, invalid=invalid,
        mean_steps=float(result.steps.mean())
    )
    logging.getLogger(__name__).info("Rendered {}x{}: {}".format(
        camera.width, camera.height, report
    ))
    return image, report
