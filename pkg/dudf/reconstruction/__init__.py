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

from dudf.reconstruction.grid import clamp_grid_distance, evaluate_grid, lattice_positions, \
    read_grid, recover_grid_distance, ScalarGrid, write_grid
from dudf.reconstruction.mesh import export_obj, load_obj, TriangleMesh

# Require ScalarGrid, TriangleMesh
from dudf.reconstruction.marching_cubes import active_cells, extract_mesh_gradient_mc, \
    pseudo_signs, reconstruct_mesh


__all__ = [
    'active_cells', 'clamp_grid_distance', 'evaluate_grid', 'export_obj',
    'extract_mesh_gradient_mc', 'lattice_positions', 'load_obj', 'pseudo_signs', 'read_grid',
    'reconstruct_mesh', 'recover_grid_distance', 'ScalarGrid', 'TriangleMesh', 'write_grid'
]
