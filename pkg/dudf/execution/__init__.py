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

from dudf.execution.trainer import TrainConfig, Trainer, TrainingLog, train

# Require TrainConfig
from dudf.execution.run_config import config_keys, load_run_config, parse_run_config, RunConfig
from dudf.execution.checkpoint import Checkpoint, load_checkpoint, save_checkpoint
from dudf.execution.ablation import ablation_matrix, AblationCell, parse_toggle, run_ablation
from dudf.execution.commands import cmd_ablate, cmd_eval, cmd_reconstruct, cmd_render, \
    cmd_sample, cmd_train


__all__ = [
    'ablation_matrix', 'AblationCell', 'Checkpoint', 'cmd_ablate', 'cmd_eval', 'cmd_reconstruct',
    'cmd_render', 'cmd_sample', 'cmd_train', 'config_keys', 'load_checkpoint', 'load_run_config',
    'parse_run_config', 'parse_toggle', 'run_ablation', 'RunConfig', 'save_checkpoint',
    'TrainConfig', 'Trainer', 'TrainingLog', 'train'
]
