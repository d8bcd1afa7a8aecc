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

from dudf import DudfError, util


GAMMA = 2.2


class PointLight(object):
    """
    Point light.

    Args:
        position (3-vector): Light position (<span style="color:#C00000"><b>required</b></span>).
        intensity (float >= 0.0): Radiant intensity
            (<span style="color:#00C000"><b>default</b></span>: 1.0).
    """

    def __init__(self, *, position, intensity=1.0):
        self.position = np.asarray(position, dtype=np.float64)
        if self.position.shape != (3,):
            raise DudfError.value(name='PointLight', argument='position', value=position)
        if not intensity >= 0.0:
            raise DudfError.value(
                name='PointLight', argument='intensity', value=intensity, hint='< 0.0'
            )
        self.intensity = float(intensity)


class Material(object):
    """
    Blinn-Phong material.

    Args:
        color (RGB): Diffuse and ambient albedo
            (<span style="color:#00C000"><b>default</b></span>: (0.8, 0.6, 0.4)).
        ambient (float >= 0.0): Ambient coefficient
            (<span style="color:#00C000"><b>default</b></span>: 0.1).
        diffuse (float >= 0.0): Diffuse coefficient
            (<span style="color:#00C000"><b>default</b></span>: 0.7).
        specular (float >= 0.0): Specular coefficient
            (<span style="color:#00C000"><b>default</b></span>: 0.3).
        shininess (float > 0.0): Specular exponent
            (<span style="color:#00C000"><b>default</b></span>: 32.0).
    """

    def __init__(
        self, *, color=(0.8, 0.6, 0.4), ambient=0.1, diffuse=0.7, specular=0.3, shininess=32.0
    ):
        self.color = np.asarray(color, dtype=np.float64)
        for name, value in (('ambient', ambient), ('diffuse', diffuse), ('specular', specular)):
            if not value >= 0.0:
                raise DudfError.value(name='Material', argument=name, value=value, hint='< 0.0')
        if not shininess > 0.0:
            raise DudfError.value(
                name='Material', argument='shininess', value=shininess, hint='<= 0.0'
            )
        self.ambient = float(ambient)
        self.diffuse = float(diffuse)
        self.specular = float(specular)
        self.shininess = float(shininess)


def blinn_phong_radiance(point, normal, view, lights, material):
    """
    Linear radiance, ambient plus per light diffuse max(n·l, 0) and, facing the light,
    specular max(n·h, 0)^shininess. Accepts single vectors or (B, 3) batches.

    Args:
        point: Surface point(s) (<span style="color:#C00000"><b>required</b></span>).
        normal: Unit normal(s) (<span style="color:#C00000"><b>required</b></span>).
        view: Unit direction(s) from the surface toward the eye
            (<span style="color:#C00000"><b>required</b></span>).
        lights (list[PointLight]): Lights (<span style="color:#C00000"><b>required</b></span>).
        material (Material): Material (<span style="color:#C00000"><b>required</b></span>).
    """
    point = np.asarray(point, dtype=np.float64)
    single = point.ndim == 1
    point = np.atleast_2d(point)
    normal = np.atleast_2d(np.asarray(normal, dtype=np.float64))
    view = np.atleast_2d(np.asarray(view, dtype=np.float64))

    radiance = np.broadcast_to(material.ambient * material.color, point.shape).copy()
    for light in lights:
        to_light = util.unit(light.position - point)
        lambert = np.einsum('bi,bi->b', normal, to_light)
        facing = lambert > 0.0
        halfway = util.unit(to_light + view)
        highlight = np.maximum(np.einsum('bi,bi->b', normal, halfway), 0.0) ** material.shininess
        highlight = np.where(facing, highlight, 0.0)
        radiance += light.intensity * (
            material.diffuse * np.maximum(lambert, 0.0)[:, None] * material.color +
            material.specular * highlight[:, None]
        )
    return radiance[0] if single else radiance


def tone_map(radiance):
    """Gamma 2.2 encoding, clamped to [0, 1]."""
    return np.clip(np.power(np.maximum(radiance, 0.0), 1.0 / GAMMA), 0.0, 1.0)


def shade_blinn_phong(point, normal, view, lights, material):
    """
    Display RGB in [0, 1] of a Blinn-Phong shaded point.
    """
    return tone_map(blinn_phong_radiance(point, normal, view, lights, material))
