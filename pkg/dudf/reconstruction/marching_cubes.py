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

import numpy as np

from dudf import DudfError
from dudf.reconstruction.grid import clamp_grid_distance, evaluate_grid, recover_grid_distance
from dudf.reconstruction.mesh import TriangleMesh
from dudf.reconstruction.tables import CORNER_OFFSETS, EDGE_AXIS, EDGE_LOWER_CORNER, \
    INTERPOLATION_VERTICES, MC_EDGES, MC_TRIANGLES


# Offset added to distances before signing
EPSILON_FLOOR = 1e-6

# Triangles with a vertex farther than this many spacings from the surface are dropped
MAX_VERTEX_DISTANCE = 1.5


def active_cells(grid):
    """
    Cell coordinates (M, 3), in C order, whose smallest corner distance is within the cell
    diagonal.
    """
    values = grid.values
    n = grid.resolution - 1
    minimum = np.full((n, n, n), np.inf)
    for dx, dy, dz in CORNER_OFFSETS:
        minimum = np.minimum(minimum, values[dx: dx + n, dy: dy + n, dz: dz + n])
    return np.argwhere(minimum <= np.sqrt(3.0) * grid.spacing)


def pseudo_signs(gradients):
    """
    Corner signs of (M, 8, 3) cell gradients: corner 0 positive, corner i positive iff its
    gradient does not point against the gradient of corner 0.
    """
    dots = np.einsum('mij,mj->mi', gradients, gradients[:, 0])
    signs = np.where(dots >= 0.0, 1.0, -1.0)
    signs[:, 0] = 1.0
    return signs


def cell_crossings(grid, cells, *, epsilon_floor=EPSILON_FLOOR):
    """
    Signed corner values and cube indices of the given cells.

    Returns:
        Tuple of corner lattice indices (M, 8), corner distances (M, 8), signed values (M, 8) and
        cube indices (M,).
    """
    N = grid.resolution
    corners = cells[:, None, :] + CORNER_OFFSETS[None, :, :]
    flat = (corners[:, :, 0] * N + corners[:, :, 1]) * N + corners[:, :, 2]
    distances = grid.values.reshape(-1)[flat]
    gradients = grid.gradients.reshape(-1, 3)[flat]
    signed = pseudo_signs(gradients) * (distances + epsilon_floor)
    cube_index = ((signed < 0.0) * (1 << np.arange(8))).sum(axis=1)
    return flat, distances, signed, cube_index


def extract_mesh_gradient_mc(grid, iso_epsilon=EPSILON_FLOOR):
    """
    Marching cubes on an unsigned distance grid with crossings inferred from gradient
    directions.

    Args:
        grid (ScalarGrid): Recovered distances with field gradients
            (<span style="color:#C00000"><b>required</b></span>).
        iso_epsilon (float > 0.0): Offset added to distances before signing
            (<span style="color:#00C000"><b>default</b></span>: 1e-6).
    """
    if grid.gradients is None:
        raise DudfError.required(name='extract_mesh_gradient_mc', argument='grid.gradients')
    N = grid.resolution
    spacing = grid.spacing
    empty = TriangleMesh(vertices=np.zeros((0, 3)), triangles=np.zeros((0, 3), dtype=np.int64))

    cells = active_cells(grid)
    if cells.shape[0] == 0:
        return empty
    flat, distances, signed, cube_index = cell_crossings(grid, cells, epsilon_floor=iso_epsilon)
    crossed = (MC_EDGES[cube_index][:, None] >> np.arange(12)) & 1 == 1
    keep = crossed.any(axis=1)
    cells, flat, distances, signed = cells[keep], flat[keep], distances[keep], signed[keep]
    cube_index, crossed = cube_index[keep], crossed[keep]
    if cells.shape[0] == 0:
        return empty

    # Global lattice edge ids, lower corner index * 3 + axis
    edge_ids = flat[:, EDGE_LOWER_CORNER] * 3 + EDGE_AXIS

    # Vertices in order of first appearance over (cell, edge)
    cell_order, edge_order = np.nonzero(crossed)
    ids = edge_ids[cell_order, edge_order]
    unique_ids, first = np.unique(ids, return_index=True)
    appearance = np.argsort(first, kind='stable')
    vertex_ids = unique_ids[appearance]
    vertex_cells = cell_order[first[appearance]]
    vertex_edges = edge_order[first[appearance]]

    j0 = INTERPOLATION_VERTICES[0, vertex_edges]
    j1 = INTERPOLATION_VERTICES[1, vertex_edges]
    a = signed[vertex_cells, j0]
    b = signed[vertex_cells, j1]
    mu = a / (a - b)
    p0 = grid.origin + spacing * (cells[vertex_cells] + CORNER_OFFSETS[j0])
    p1 = grid.origin + spacing * (cells[vertex_cells] + CORNER_OFFSETS[j1])
    vertices = p0 + mu[:, None] * (p1 - p0)
    vertex_distance = (1.0 - mu) * distances[vertex_cells, j0] + mu * distances[vertex_cells, j1]

    # Triangles from the lookup table, edge indices mapped to welded vertices
    table = MC_TRIANGLES[cube_index][:, :15].reshape(-1, 5, 3)
    cell_of, slot = np.nonzero(table[:, :, 0] >= 0)
    triangle_edges = table[cell_of, slot]
    triangle_ids = edge_ids[cell_of[:, None], triangle_edges]
    sorter = np.argsort(vertex_ids)
    triangles = sorter[np.searchsorted(vertex_ids, triangle_ids, sorter=sorter)]

    near = np.all(vertex_distance[triangles] <= MAX_VERTEX_DISTANCE * spacing, axis=1)
    dropped = int((~near).sum())
    if dropped > 0:
        logging.getLogger(__name__).debug(
            "Dropped {} triangles farther than {} spacings from the surface.".format(
                dropped, MAX_VERTEX_DISTANCE
            )
        )
    mesh = TriangleMesh(vertices=vertices, triangles=triangles[near]).remove_degenerate()
    logging.getLogger(__name__).info(
        "Extracted {} vertices, {} triangles from {} active cells at resolution {}.".format(
            mesh.num_vertices, mesh.num_triangles, cells.shape[0], N
        )
    )
    return mesh


def reconstruct_mesh(field, N, p, *, target='scaled'):
    """
    Grid evaluation, distance recovery and gradient-sign marching cubes in one pass.

    Args:
        field (SirenNetwork | AnalyticField): Learned or analytic field
            (<span style="color:#C00000"><b>required</b></span>).
        N (int >= 8): Lattice resolution (<span style="color:#C00000"><b>required</b></span>).
        p (ScalingParams): Scaling parameters (<span style="color:#C00000"><b>required</b></span>).
        target ("scaled" | "distance"): Whether the field is scaled and needs distance recovery
            (<span style="color:#00C000"><b>default</b></span>: "scaled").
    """
    grid = evaluate_grid(field, N, p)
    if target == 'scaled':
        grid = recover_grid_distance(grid, p)
    else:
        grid = clamp_grid_distance(grid)
    return extract_mesh_gradient_mc(grid)
