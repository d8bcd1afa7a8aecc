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

import tensorflow as tf

from dudf import util


def enable_determinism():
    """
    Requests deterministic TensorFlow kernels, a warning on versions without that switch.
    """
    try:
        tf.config.experimental.enable_op_determinism()
    except AttributeError:
        logging.getLogger(__name__).warning(
            "TensorFlow version without op determinism, relying on fixed reduction order."
        )


class DudfConfig(object):
    """
    Process-wide execution configuration.

    Args:
        deterministic (bool): Whether to request deterministic TensorFlow kernels and a fixed
            gradient reduction order
            (<span style="color:#00C000"><b>default</b></span>: false).
        threads (int > 0): Cap on TensorFlow worker threads
            (<span style="color:#00C000"><b>default</b></span>: DUDF_THREADS environment
            variable, else TensorFlow default).
        log_level ("debug" | "info" | "warning" | "error" | "critical"): Logging level
            (<span style="color:#00C000"><b>default</b></span>: "warning").
    """

    def __init__(self, *, deterministic=False, threads=None, log_level='warning'):
        assert isinstance(deterministic, bool)
        super().__setattr__('deterministic', deterministic)

        super().__setattr__('threads', util.resolve_threads(threads=threads))

        assert log_level in util.log_levels
        super().__setattr__('log_level', log_level)

    def apply(self):
        """
        Pushes thread caps and determinism into TensorFlow, only effective before TensorFlow
        executes its first operation.
        """
        if self.threads is not None:
            try:
                tf.config.threading.set_intra_op_parallelism_threads(self.threads)
                tf.config.threading.set_inter_op_parallelism_threads(self.threads)
            except RuntimeError:
                logging.getLogger(__name__).warning(
                    "Thread cap {} ignored, TensorFlow already initialized.".format(self.threads)
                )
        if self.deterministic:
            enable_determinism()

    def __setattr__(self, name, value):
        raise NotImplementedError

    def __delattr__(self, name):
        raise NotImplementedError
