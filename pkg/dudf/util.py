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
import os

import numpy as np

from dudf import DudfError


log_levels = dict(
    info=logging.INFO,
    debug=logging.DEBUG,
    critical=logging.CRITICAL,
    warning=logging.WARNING,
    error=logging.ERROR
)


def as_points(*, x, name, argument='x'):
    """Converts a single 3-vector or a batch of 3-vectors to a float64 (B, 3) array.

    Returns: Tuple of the batched array and whether the input was a single point.

    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape == (3,):
        return x[None, :], True
    elif x.ndim == 2 and x.shape[1] == 3:
        return x, False
    else:
        raise DudfError.value(name=name, argument=argument + '.shape', value=x.shape)


def unit(x, axis=-1):
    norm = np.linalg.norm(x, axis=axis, keepdims=True)
    return x / np.where(norm > 0.0, norm, 1.0)


def resolve_threads(threads=None):
    """Thread cap from an explicit value or the DUDF_THREADS environment variable.
    """
    if threads is None:
        threads = os.environ.get('DUDF_THREADS')
        if threads is None or threads == '':
            return None
        try:
            threads = int(threads)
        except ValueError:
            raise DudfError.value(name='environment', argument='DUDF_THREADS', value=threads)
    if not isinstance(threads, int) or threads < 1:
        raise DudfError.value(name='config', argument='threads', value=threads, hint='< 1')
    return threads
