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
from dudf.rendering.shading import Material, PointLight


class RenderSettings(object):
    """
    Sphere tracing and shading settings.

    Args:
        max_steps (int >= 1): Marching steps per ray
            (<span style="color:#00C000"><b>default</b></span>: 256).
        epsilon (float > 0.0): Hit threshold on the raw field value
            (<span style="color:#00C000"><b>default</b></span>: 1e-4).
        safety (0.0 < float <= 1.0): Step safety factor
            (<span style="color:#00C000"><b>default</b></span>: 0.9).
        background (RGB in [0, 1]): Color of missed pixels
            (<span style="color:#00C000"><b>default</b></span>: white).
        lights (list[PointLight]): Point lights
            (<span style="color:#00C000"><b>default</b></span>: one unit light at (2, 2, 2)).
        material (Material): Surface material
            (<span style="color:#00C000"><b>default</b></span>: Material defaults).
    """

    def __init__(
        self, *, max_steps=256, epsilon=1e-4, safety=0.9, background=(1.0, 1.0, 1.0),
        lights=None, material=None
    ):
        if not isinstance(max_steps, int) or max_steps < 1:
            raise DudfError.value(
                name='RenderSettings', argument='max_steps', value=max_steps, hint='< 1'
            )
        if not epsilon > 0.0:
            raise DudfError.value(
                name='RenderSettings', argument='epsilon', value=epsilon, hint='<= 0.0'
            )
        if not 0.0 < safety <= 1.0:
            raise DudfError.value(name='RenderSettings', argument='safety', value=safety)
        background = np.asarray(background, dtype=np.float64)
        if background.shape != (3,) or np.any(background < 0.0) or np.any(background > 1.0):
            raise DudfError.value(name='RenderSettings', argument='background', value=background)
        self.max_steps = max_steps
        self.epsilon = float(epsilon)
        self.safety = float(safety)
        self.background = background
        if lights is None:
            lights = [PointLight(position=(2.0, 2.0, 2.0), intensity=1.0)]
        self.lights = list(lights)
        self.material = Material() if material is None else material


class TraceResult(object):
    """
    Batched sphere tracing outcome.

    Args:
        hits ((B,) bool array): Whether each ray hit
            (<span style="color:#C00000"><b>required</b></span>).
        points ((B, 3) array): Final marching positions
            (<span style="color:#C00000"><b>required</b></span>).
        steps ((B,) int array): Field evaluations inside the domain cube
            (<span style="color:#C00000"><b>required</b></span>).
        paths (list[list[(point, value, step)]]): Per-ray marching records
            (<span style="color:#00C000"><b>default</b></span>: not recorded).
    """

    def __init__(self, *, hits, points, steps, paths=None):
        self.hits = hits
        self.points = points
        self.steps = steps
        self.paths = paths


class TraceHit(object):

    def __init__(self, *, point, steps):
        self.point = point
        self.steps = steps

    def __repr__(self):
        return 'TraceHit(point={}, steps={})'.format(self.point, self.steps)


def clip_to_cube(origins, directions):
    """
    Slab test against [-1, 1]^3.

    Returns:
        Tuple of entry and exit ray parameters (B,), entry clamped to 0, and the intersection mask.
    """
    with np.errstate(divide='ignore', invalid='ignore'):
        inverse = 1.0 / directions
        t0 = (-1.0 - origins) * inverse
        t1 = (1.0 - origins) * inverse
    lower = np.where(np.isnan(t0), -np.inf, np.minimum(t0, t1))
    upper = np.where(np.isnan(t1), np.inf, np.maximum(t0, t1))
    # Axis-parallel rays outside a slab never enter
    parallel = directions == 0.0
    outside = parallel & ((origins < -1.0) | (origins > 1.0))
    lower = np.where(parallel, -np.inf, lower)
    upper = np.where(parallel, np.inf, upper)
    t_near = np.maximum(lower.max(axis=1), 0.0)
    t_far = upper.min(axis=1)
    inside = (t_far >= t_near) & ~outside.any(axis=1)
    return t_near, t_far, inside


def trace_rays(
    field, p, origins, directions, settings, *, record_paths=False, target='scaled'
):
    """
    Vectorized conservative sphere tracing: each ray advances by
    safety * max(f, sqrt(f / alpha)), a lower bound of the distance when f is the scaled
    distance, until f < epsilon (hit, negative values included) or it leaves the domain cube or
    runs out of steps (miss). A raw distance field (target "distance") advances by safety * f.
    """
    if target not in ('scaled', 'distance'):
        raise DudfError.value(name='sphere_trace', argument='target', value=target)
    origins = np.asarray(origins, dtype=np.float64)
    directions = np.asarray(directions, dtype=np.float64)
    if np.any(np.abs(np.linalg.norm(directions, axis=1) - 1.0) > 1e-9):
        raise DudfError.value(name='sphere_trace', argument='direction', value='not unit-length')
    count = origins.shape[0]
    t_near, t_far, active = clip_to_cube(origins, directions)
    t = t_near.copy()
    hits = np.zeros((count,), dtype=bool)
    steps = np.zeros((count,), dtype=np.int64)
    paths = [list() for _ in range(count)] if record_paths else None

    for _ in range(settings.max_steps):
        indices = np.flatnonzero(active)
        if indices.size == 0:
            break
        positions = origins[indices] + t[indices, None] * directions[indices]
        values = np.asarray(field.forward(positions), dtype=np.float64).reshape(-1)
        steps[indices] += 1

        hit = values < settings.epsilon
        hits[indices[hit]] = True
        active[indices[hit]] = False

        marching = ~hit
        f = values[marching]
        if target == 'scaled':
            length = settings.safety * np.maximum(f, np.sqrt(f / p.alpha))
        else:
            length = settings.safety * f
        if record_paths:
            for n, index in enumerate(indices):
                if hit[n]:
                    paths[index].append((positions[n], values[n], 0.0))
            for index, position, value, step in zip(
                indices[marching], positions[marching], f, length
            ):
                paths[index].append((position, value, step))
        moving = indices[marching]
        t[moving] += length
        active[moving[t[moving] > t_far[moving]]] = False

    points = origins + t[:, None] * directions
    return TraceResult(hits=hits, points=points, steps=steps, paths=paths)


def sphere_trace(
    field, p, origin, direction, settings, *, record_path=False, target='scaled'
):
    """
    Traces one ray.

    Args:
        field (SirenNetwork | AnalyticField): Scaled distance field
            (<span style="color:#C00000"><b>required</b></span>).
        p (ScalingParams): Scaling parameters (<span style="color:#C00000"><b>required</b></span>).
        origin (3-vector): Ray origin (<span style="color:#C00000"><b>required</b></span>).
        direction (unit 3-vector): Ray direction
            (<span style="color:#C00000"><b>required</b></span>).
        settings (RenderSettings): Tracing settings
            (<span style="color:#C00000"><b>required</b></span>).
        record_path (bool): Whether to also return the marching records
            (<span style="color:#00C000"><b>default</b></span>: false).
        target ("scaled" | "distance"): Whether the field is the scaled or the raw distance
            (<span style="color:#00C000"><b>default</b></span>: "scaled").

    Returns:
        TraceHit or None on a miss, plus the list of (point, value, step) records if requested.
    """
    origins, _ = util.as_points(x=origin, name='sphere_trace', argument='origin')
    directions, _ = util.as_points(x=direction, name='sphere_trace', argument='direction')
    result = trace_rays(
        field, p, origins, directions, settings, record_paths=record_path, target=target
    )
    hit = None
    if result.hits[0]:
        hit = TraceHit(point=result.points[0], steps=int(result.steps[0]))
    if record_path:
        return hit, result.paths[0]
    return hit
