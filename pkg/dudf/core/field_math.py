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
from dudf.core.networks.jet import Jet2
from dudf.core.shapes import AnalyticShape


# Central finite-difference step for Hessians of analytic fields
HESSIAN_STEP = 1e-5


class ScalingParams(object):
    """
    Hyperbolic scaling of the unsigned distance, t = d tanh(alpha d).

    Args:
        alpha (float > 0.0): Width control of the quadratic band around the surface
            (<span style="color:#00C000"><b>default</b></span>: 100.0).
    """

    def __init__(self, *, alpha=100.0):
        if isinstance(alpha, bool) or not isinstance(alpha, (int, float, np.floating)):
            raise DudfError.type(name='ScalingParams', argument='alpha', dtype=type(alpha))
        if not np.isfinite(alpha) or alpha <= 0.0:
            raise DudfError.value(
                name='ScalingParams', argument='alpha', value=alpha, hint='<= 0.0'
            )
        super().__setattr__('alpha', float(alpha))

    def __setattr__(self, name, value):
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, ScalingParams) and self.alpha == other.alpha

    def __hash__(self):
        return hash(self.alpha)

    def __repr__(self):
        return 'ScalingParams(alpha={})'.format(self.alpha)


def _as_nonnegative(*, x, name, argument):
    array = np.asarray(x, dtype=np.float64)
    if not np.all(np.isfinite(array)):
        raise DudfError.value(name=name, argument=argument, value=x, hint='is not finite')
    if np.any(array < 0.0):
        raise DudfError.value(name=name, argument=argument, value=x, hint='< 0.0')
    return array


def _like_input(x, result):
    if np.ndim(x) == 0:
        return float(result)
    return result


def scaled_distance(d, p):
    """
    Hyperbolically scaled distance d tanh(alpha d), elementwise.

    Args:
        d (float >= 0.0 | array): Unsigned distance(s)
            (<span style="color:#C00000"><b>required</b></span>).
        p (ScalingParams): Scaling parameters (<span style="color:#C00000"><b>required</b></span>).
    """
    array = _as_nonnegative(x=d, name='scaled_distance', argument='d')
    return _like_input(d, array * np.tanh(p.alpha * array))


def phi(d, p):
    """
    Gradient norm of the scaled distance at unsigned distance d.
    """
    array = _as_nonnegative(x=d, name='phi', argument='d')
    tanh = np.tanh(p.alpha * array)
    return _like_input(d, tanh + p.alpha * array * (1.0 - tanh * tanh))


def recover_distance_sqrt(t, p):
    """
    Quadratic-band distance recovery sqrt(t / alpha), a lower bound of the true distance.
    """
    array = _as_nonnegative(x=t, name='recover_distance_sqrt', argument='t')
    return _like_input(t, np.sqrt(array / p.alpha))


def _invert_single(t, alpha):
    if t == 0.0:
        return 0.0

    def residual(d):
        return d * np.tanh(alpha * d) - t

    # t <= d and t <= alpha d^2, so the root is at least the larger of both
    lower = 0.0
    upper = max(t, np.sqrt(t / alpha)) * 2.0 + 1.0 / alpha
    while residual(upper) < 0.0:
        upper *= 2.0

    d = max(t, np.sqrt(t / alpha))
    for _ in range(200):
        value = residual(d)
        if value == 0.0:
            break
        elif value < 0.0:
            lower = d
        else:
            upper = d
        tanh = np.tanh(alpha * d)
        slope = tanh + alpha * d * (1.0 - tanh * tanh)
        step = value / slope if slope > 0.0 else np.inf
        candidate = d - step
        if not (lower < candidate < upper):
            candidate = 0.5 * (lower + upper)
        if abs(candidate - d) <= 4.0 * np.finfo(np.float64).eps * max(d, 1e-300):
            d = candidate
            break
        d = candidate
    # Residual within a few ulps of t
    assert abs(residual(d)) <= max(1e-12, 16.0 * np.finfo(np.float64).eps * t)
    return d


def invert_scaled_distance(t, p):
    """
    Exact inverse of the scaled distance, solving d tanh(alpha d) = t by bracketed Newton
    iteration with bisection fallback.

    Args:
        t (float >= 0.0 | array): Scaled distance(s)
            (<span style="color:#C00000"><b>required</b></span>).
        p (ScalingParams): Scaling parameters (<span style="color:#C00000"><b>required</b></span>).
    """
    array = _as_nonnegative(x=t, name='invert_scaled_distance', argument='t')
    result = np.vectorize(lambda x: _invert_single(float(x), p.alpha), otypes=[np.float64])(
        array
    )
    return _like_input(t, result)


def analytic_udf(shape, x):
    """
    Exact unsigned distance and unoriented footpoint normal of an analytic shape.

    Args:
        shape (AnalyticShape): Ground-truth shape
            (<span style="color:#C00000"><b>required</b></span>).
        x (3-vector | (B, 3) array): Query point(s)
            (<span style="color:#C00000"><b>required</b></span>).

    Returns:
        Tuple of distance(s) and unit normal(s), unbatched for a single query point.
    """
    shape = AnalyticShape.create(shape)
    points, single = util.as_points(x=x, name='analytic_udf')
    if not np.all(np.isfinite(points)):
        raise DudfError.value(name='analytic_udf', argument='x', value=x, hint='is not finite')
    distances, _, normals = shape.closest(points)
    if single:
        return float(distances[0]), normals[0]
    return distances, normals


def _scaled_gradient(shape, points, p):
    distances, footpoints, _ = shape.closest(points)
    off_surface = distances > 0.0
    safe = np.where(off_surface, distances, 1.0)
    direction = (points - footpoints) / safe[:, None]
    gradient = direction * phi(distances, p)[:, None]
    return np.where(off_surface[:, None], gradient, 0.0), distances


def analytic_scaled_field(shape, x, p):
    """
    Jet of the scaled distance of an analytic shape, with exact gradient and a central
    finite-difference Hessian.

    Args:
        shape (AnalyticShape): Ground-truth shape
            (<span style="color:#C00000"><b>required</b></span>).
        x (3-vector | (B, 3) array): Query point(s)
            (<span style="color:#C00000"><b>required</b></span>).
        p (ScalingParams): Scaling parameters (<span style="color:#C00000"><b>required</b></span>).
    """
    shape = AnalyticShape.create(shape)
    points, single = util.as_points(x=x, name='analytic_scaled_field')
    gradient, distances = _scaled_gradient(shape, points, p)
    value = scaled_distance(distances, p)

    hessian = np.empty(points.shape + (3,))
    for axis in range(3):
        offset = np.zeros(3)
        offset[axis] = HESSIAN_STEP
        forward, _ = _scaled_gradient(shape, points + offset, p)
        backward, _ = _scaled_gradient(shape, points - offset, p)
        hessian[:, :, axis] = (forward - backward) / (2.0 * HESSIAN_STEP)
    hessian = 0.5 * (hessian + np.swapaxes(hessian, 1, 2))

    jet = Jet2(value=value, gradient=gradient, hessian=hessian)
    if single:
        return jet.single(0)
    return jet


class AnalyticField(object):
    """
    Scaled distance field of an analytic shape behind the network field interface
    (`forward`, `forward_jet`), used as oracle input to reconstruction and rendering.

    Args:
        shape (AnalyticShape | specification): Ground-truth shape
            (<span style="color:#C00000"><b>required</b></span>).
        params (ScalingParams): Scaling parameters
            (<span style="color:#C00000"><b>required</b></span>).
        target ("scaled" | "distance"): Whether the field is the scaled or the raw distance
            (<span style="color:#00C000"><b>default</b></span>: "scaled").
    """

    def __init__(self, *, shape, params, target='scaled'):
        self.shape = AnalyticShape.create(shape)
        self.params = params
        if target not in ('scaled', 'distance'):
            raise DudfError.value(name='AnalyticField', argument='target', value=target)
        self.target = target

    def forward(self, x):
        points, single = util.as_points(x=x, name='AnalyticField.forward')
        distances, _, _ = self.shape.closest(points)
        if self.target == 'scaled':
            values = scaled_distance(distances, self.params)
        else:
            values = distances
        return float(values[0]) if single else values

    def forward_jet(self, x, order=2):
        if self.target == 'distance':
            points, single = util.as_points(x=x, name='AnalyticField.forward_jet')
            distances, footpoints, _ = self.shape.closest(points)
            gradient = util.unit(points - footpoints)
            jet = Jet2(value=distances, gradient=gradient)
            return jet.single(0) if single else jet
        if order == 2:
            return analytic_scaled_field(self.shape, x, self.params)
        points, single = util.as_points(x=x, name='AnalyticField.forward_jet')
        gradient, distances = _scaled_gradient(self.shape, points, self.params)
        jet = Jet2(value=scaled_distance(distances, self.params), gradient=gradient)
        return jet.single(0) if single else jet
