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

from dudf.core.objectives.weights import LossWeights

# Require LossWeights
from dudf.core.objectives.dirichlet import dirichlet_loss
from dudf.core.objectives.eikonal import eikonal_loss, eikonal_residuals
from dudf.core.objectives.mcurv import exact_alignment_residuals, mcurv_loss, mcurv_residuals
from dudf.core.objectives.neumann import neumann_loss
from dudf.core.objectives.refinement import refinement_loss
from dudf.core.objectives.total import loss_terms, terms, total_loss


__all__ = [
    'dirichlet_loss', 'eikonal_loss', 'eikonal_residuals', 'exact_alignment_residuals',
    'LossWeights', 'loss_terms', 'mcurv_loss', 'mcurv_residuals', 'neumann_loss',
    'refinement_loss', 'terms', 'total_loss'
]
