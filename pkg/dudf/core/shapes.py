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


def _orthonormal_frame(axis):
    # Two unit vectors completing the axis to a right-handed orthonormal frame.
    helper = np.array([1.0, 0.0, 0.0]) if abs(axis[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    first = np.cross(axis, helper)
    first /= np.linalg.norm(first)
    second = np.cross(axis, first)
    return first, second


def _unit_vector(*, name, argument, value):
    value = np.asarray(value, dtype=np.float64)
    if value.shape != (3,) or not np.all(np.isfinite(value)):
        raise DudfError.value(name=name, argument=argument, value=value)
    norm = np.linalg.norm(value)
    if abs(norm - 1.0) > 1e-9:
        raise DudfError.value(name=name, argument=argument, value=value, hint='is not unit-length')
    return value / norm


def _point(*, name, argument, value):
    value = np.asarray(value, dtype=np.float64)
    if value.shape != (3,) or not np.all(np.isfinite(value)):
        raise DudfError.value(name=name, argument=argument, value=value)
    return value


def _positive(*, name, argument, value):
    if not isinstance(value, (int, float)) or not np.isfinite(value) or value <= 0.0:
        raise DudfError.value(name=name, argument=argument, value=value, hint='<= 0.0')
    return float(value)


class AnalyticShape(object):
    """
    Base class for analytic ground-truth surfaces in normalized-cube units.

    Subclasses implement `closest(x)`, returning distances, footpoints and unoriented surface
    normals at the footpoints for a (B, 3) batch, and `medial_distance(x)`, the distance to the
    known set where the distance gradient is undefined.
    """

    @staticmethod
    def create(shape, **kwargs):
        """
        Creates an analytic shape from a specification.

        Args:
            shape (specification | AnalyticShape object): Specification key or dictionary with
                key "type" (<span style="color:#C00000"><b>required</b></span>).
            kwargs: Additional shape arguments.
        """
        if isinstance(shape, AnalyticShape):
            return shape
        elif isinstance(shape, dict):
            kwargs = dict(shape, **kwargs)
            shape = kwargs.pop('type')
            return AnalyticShape.create(shape, **kwargs)
        elif shape in shape_modules:
            return shape_modules[shape](**kwargs)
        else:
            raise DudfError.value(
                name='AnalyticShape.create', argument='shape', value=shape,
                hint='not in {{{}}}'.format(','.join(shape_modules))
            )

    def check_in_cube(self, *, extent):
        if extent > 1.0 + 1e-12:
            raise DudfError.value(
                name=self.__class__.__name__, argument='extent', value=extent,
                hint='exceeds the side-2 cube'
            )

    def closest(self, x):
        raise NotImplementedError

    def medial_distance(self, x):
        raise NotImplementedError

    def sample_surface(self, *, n, rng):
        raise NotImplementedError


class Sphere(AnalyticShape):
    """
    Sphere (specification key: `sphere`).

    Args:
        center (3-vector): Center (<span style="color:#00C000"><b>default</b></span>: origin).
        radius (float > 0.0): Radius (<span style="color:#00C000"><b>default</b></span>: 0.5).
    """

    def __init__(self, *, center=(0.0, 0.0, 0.0), radius=0.5):
        self.center = _point(name='Sphere', argument='center', value=center)
        self.radius = _positive(name='Sphere', argument='radius', value=radius)
        self.check_in_cube(extent=(np.abs(self.center).max() + self.radius))

    def closest(self, x):
        offset = x - self.center
        norm = np.linalg.norm(offset, axis=1)
        # Center is medial, any direction is a valid footpoint direction there
        normals = np.where(
            (norm > 0.0)[:, None], offset / np.where(norm > 0.0, norm, 1.0)[:, None],
            np.array([0.0, 0.0, 1.0])
        )
        footpoints = self.center + self.radius * normals
        return np.abs(norm - self.radius), footpoints, normals

    def medial_distance(self, x):
        return np.linalg.norm(x - self.center, axis=1)

    def sample_surface(self, *, n, rng):
        normals = util.unit(rng.standard_normal(size=(n, 3)))
        return self.center + self.radius * normals, normals


class Torus(AnalyticShape):
    """
    Ring torus (specification key: `torus`).

    Args:
        major_radius (float > 0.0): Distance from the center to the tube core
            (<span style="color:#00C000"><b>default</b></span>: 0.5).
        minor_radius (float > 0.0): Tube radius, smaller than the major radius
            (<span style="color:#00C000"><b>default</b></span>: 0.2).
        axis (unit 3-vector): Symmetry axis (<span style="color:#00C000"><b>default</b></span>:
            z-axis).
        center (3-vector): Center (<span style="color:#00C000"><b>default</b></span>: origin).
    """

    def __init__(
        self, *, major_radius=0.5, minor_radius=0.2, axis=(0.0, 0.0, 1.0), center=(0.0, 0.0, 0.0)
    ):
        self.major_radius = _positive(name='Torus', argument='major_radius', value=major_radius)
        self.minor_radius = _positive(name='Torus', argument='minor_radius', value=minor_radius)
        if self.minor_radius >= self.major_radius:
            raise DudfError.value(
                name='Torus', argument='minor_radius', value=minor_radius, hint='>= major_radius'
            )
        self.axis = _unit_vector(name='Torus', argument='axis', value=axis)
        self.center = _point(name='Torus', argument='center', value=center)
        self.check_in_cube(
            extent=(np.abs(self.center).max() + self.major_radius + self.minor_radius)
        )

    def _core(self, x):
        offset = x - self.center
        height = offset @ self.axis
        radial = offset - height[:, None] * self.axis
        radial_norm = np.linalg.norm(radial, axis=1)
        first, _ = _orthonormal_frame(self.axis)
        directions = np.where(
            (radial_norm > 0.0)[:, None],
            radial / np.where(radial_norm > 0.0, radial_norm, 1.0)[:, None], first
        )
        return offset, self.major_radius * directions, radial_norm, height

    def closest(self, x):
        offset, core, _, _ = self._core(x)
        tube = offset - core
        tube_norm = np.linalg.norm(tube, axis=1)
        normals = np.where(
            (tube_norm > 0.0)[:, None], tube / np.where(tube_norm > 0.0, tube_norm, 1.0)[:, None],
            self.axis
        )
        footpoints = self.center + core + self.minor_radius * normals
        return np.abs(tube_norm - self.minor_radius), footpoints, normals

    def medial_distance(self, x):
        offset, core, radial_norm, _ = self._core(x)
        # Core circle and symmetry axis
        return np.minimum(np.linalg.norm(offset - core, axis=1), radial_norm)

    def sample_surface(self, *, n, rng):
        first, second = _orthonormal_frame(self.axis)
        samples = list()
        count = 0
        while count < n:
            u = rng.uniform(0.0, 2.0 * np.pi, size=(2 * n,))
            v = rng.uniform(0.0, 2.0 * np.pi, size=(2 * n,))
            # Area element is proportional to R + r cos(v)
            accept = rng.uniform(size=(2 * n,)) * (self.major_radius + self.minor_radius) <= \
                self.major_radius + self.minor_radius * np.cos(v)
            samples.append((u[accept], v[accept]))
            count += int(accept.sum())
        u = np.concatenate([s[0] for s in samples])[:n]
        v = np.concatenate([s[1] for s in samples])[:n]
        radial = np.cos(u)[:, None] * first + np.sin(u)[:, None] * second
        normals = np.cos(v)[:, None] * radial + np.sin(v)[:, None] * self.axis
        positions = self.center + self.major_radius * radial + self.minor_radius * normals
        return positions, normals


class OpenDisk(AnalyticShape):
    """
    Flat open disk with a free boundary rim (specification key: `open_disk`).

    Args:
        radius (float > 0.0): Disk radius (<span style="color:#00C000"><b>default</b></span>: 0.5).
        normal (unit 3-vector): Plane normal (<span style="color:#00C000"><b>default</b></span>:
            z-axis).
        center (3-vector): Center (<span style="color:#00C000"><b>default</b></span>: origin).
    """

    def __init__(self, *, radius=0.5, normal=(0.0, 0.0, 1.0), center=(0.0, 0.0, 0.0)):
        self.radius = _positive(name='OpenDisk', argument='radius', value=radius)
        self.normal = _unit_vector(name='OpenDisk', argument='normal', value=normal)
        self.center = _point(name='OpenDisk', argument='center', value=center)
        self.check_in_cube(extent=(np.abs(self.center).max() + self.radius))

    def _split(self, x):
        offset = x - self.center
        height = offset @ self.normal
        planar = offset - height[:, None] * self.normal
        return offset, height, planar, np.linalg.norm(planar, axis=1)

    def closest(self, x):
        _, height, planar, planar_norm = self._split(x)
        inside = planar_norm <= self.radius
        rim = self.radius * planar / np.where(planar_norm > 0.0, planar_norm, 1.0)[:, None]
        footpoints = self.center + np.where(inside[:, None], planar, rim)
        distances = np.where(
            inside, np.abs(height), np.linalg.norm(x - footpoints, axis=1)
        )
        normals = np.broadcast_to(self.normal, x.shape).copy()
        return distances, footpoints, normals

    def medial_distance(self, x):
        # Rim circle, where the footpoint jumps between the flat and the edge region
        _, height, _, planar_norm = self._split(x)
        return np.hypot(planar_norm - self.radius, height)

    def sample_surface(self, *, n, rng):
        first, second = _orthonormal_frame(self.normal)
        radius = self.radius * np.sqrt(rng.uniform(size=(n,)))
        angle = rng.uniform(0.0, 2.0 * np.pi, size=(n,))
        positions = self.center + radius[:, None] * (
            np.cos(angle)[:, None] * first + np.sin(angle)[:, None] * second
        )
        return positions, np.broadcast_to(self.normal, (n, 3)).copy()


class Plane(AnalyticShape):
    """
    Unbounded plane, test oracle only (specification key: `plane`).

    Args:
        normal (unit 3-vector): Plane normal (<span style="color:#00C000"><b>default</b></span>:
            z-axis).
        point (3-vector): Point on the plane (<span style="color:#00C000"><b>default</b></span>:
            origin).
    """

    def __init__(self, *, normal=(0.0, 0.0, 1.0), point=(0.0, 0.0, 0.0)):
        self.normal = _unit_vector(name='Plane', argument='normal', value=normal)
        self.point = _point(name='Plane', argument='point', value=point)

    def closest(self, x):
        height = (x - self.point) @ self.normal
        footpoints = x - height[:, None] * self.normal
        normals = np.broadcast_to(self.normal, x.shape).copy()
        return np.abs(height), footpoints, normals

    def medial_distance(self, x):
        return np.full((x.shape[0],), np.inf)

    def sample_surface(self, *, n, rng):
        raise DudfError.invalid(
            name='Plane', argument='sample_surface', condition='unbounded plane'
        )


shape_modules = dict(open_disk=OpenDisk, plane=Plane, sphere=Sphere, torus=Torus)
