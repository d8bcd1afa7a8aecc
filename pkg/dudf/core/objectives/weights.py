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

from dudf import DudfError


class LossWeights(object):
    """
    Immutable weights of the loss terms.

    Args:
        lambda_e (float >= 0.0): Eikonal weight (<span style="color:#00C000"><b>default</b></span>:
            1e4).
        lambda_d (float >= 0.0): Dirichlet weight
            (<span style="color:#00C000"><b>default</b></span>: 1e4).
        lambda_n (float >= 0.0): Neumann weight (<span style="color:#00C000"><b>default</b></span>:
            1e4).
        lambda_g (float >= 0.0): Maximum-curvature alignment weight
            (<span style="color:#00C000"><b>default</b></span>: 1e3).
        lambda_mu (float >= 0.0): Refinement mean weight
            (<span style="color:#00C000"><b>default</b></span>: 1e5).
        lambda_sigma (float >= 0.0): Refinement standard deviation weight
            (<span style="color:#00C000"><b>default</b></span>: 1e5).
    """

    names = ('lambda_e', 'lambda_d', 'lambda_n', 'lambda_g', 'lambda_mu', 'lambda_sigma')

    def __init__(
        self, *, lambda_e=1e4, lambda_d=1e4, lambda_n=1e4, lambda_g=1e3, lambda_mu=1e5,
        lambda_sigma=1e5
    ):
        values = dict(
            lambda_e=lambda_e, lambda_d=lambda_d, lambda_n=lambda_n, lambda_g=lambda_g,
            lambda_mu=lambda_mu, lambda_sigma=lambda_sigma
        )
        for name, value in values.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise DudfError.type(name='LossWeights', argument=name, dtype=type(value))
            if not np.isfinite(value) or value < 0.0:
                raise DudfError.value(name='LossWeights', argument=name, value=value, hint='< 0.0')
            super().__setattr__(name, float(value))

    def replace(self, **kwargs):
        values = self.to_dict()
        for name in kwargs:
            if name not in values:
                raise DudfError.invalid(name='LossWeights', argument=name)
        values.update(kwargs)
        return LossWeights(**values)

    def to_dict(self):
        return {name: getattr(self, name) for name in self.names}

    def __eq__(self, other):
        return isinstance(other, LossWeights) and self.to_dict() == other.to_dict()

    def __repr__(self):
        return 'LossWeights({})'.format(
            ', '.join('{}={}'.format(name, value) for name, value in self.to_dict().items())
        )

    def __setattr__(self, name, value):
        raise NotImplementedError
