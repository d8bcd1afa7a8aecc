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

os.environ.setdefault('TF_CPP_MIN_LOG_LEVEL', '3')

from dudf.exception import CheckpointError, DudfError, FormatError, TrainingError
from dudf.core.config import DudfConfig
from dudf.core.field_math import ScalingParams
from dudf.core.networks import Jet2, SirenNetwork


__all__ = [
    'CheckpointError', 'DudfConfig', 'DudfError', 'FormatError', 'Jet2', 'ScalingParams',
    'SirenNetwork', 'TrainingError'
]

__version__ = '0.1.0'

logging.getLogger(__name__).addHandler(logging.NullHandler())
