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

from dudf import DudfError, FormatError


class TriangleMesh(object):
    """
    Indexed triangle surface.

    Args:
        vertices ((V, 3) array): Vertex positions
            (<span style="color:#C00000"><b>required</b></span>).
        triangles ((T, 3) int array): Vertex index triplets
            (<span style="color:#C00000"><b>required</b></span>).
        vertex_normals ((V, 3) array): Per-vertex normals
            (<span style="color:#00C000"><b>default</b></span>: none).
        vertex_scalars (dict[str, (V,) array]): Named per-vertex scalars, exported as OBJ
            comment records (<span style="color:#00C000"><b>default</b></span>: none).
    """

    def __init__(self, *, vertices, triangles, vertex_normals=None, vertex_scalars=None):
        self.vertices = np.asarray(vertices, dtype=np.float64).reshape(-1, 3)
        self.triangles = np.asarray(triangles, dtype=np.int64).reshape(-1, 3)
        if self.triangles.size > 0 and (
            self.triangles.min() < 0 or self.triangles.max() >= self.vertices.shape[0]
        ):
            raise DudfError.value(
                name='TriangleMesh', argument='triangles', value='index out of range'
            )
        if vertex_normals is not None:
            vertex_normals = np.asarray(vertex_normals, dtype=np.float64).reshape(-1, 3)
            if vertex_normals.shape != self.vertices.shape:
                raise DudfError.mismatch(
                    name='TriangleMesh', argument='vertex_normals', value1=self.vertices.shape,
                    value2=vertex_normals.shape
                )
        self.vertex_normals = vertex_normals
        self.vertex_scalars = dict() if vertex_scalars is None else dict(vertex_scalars)
        for name, values in self.vertex_scalars.items():
            if len(values) != self.vertices.shape[0]:
                raise DudfError.mismatch(
                    name='TriangleMesh', argument=name, value1=self.vertices.shape[0],
                    value2=len(values)
                )

    @property
    def num_vertices(self):
        return self.vertices.shape[0]

    @property
    def num_triangles(self):
        return self.triangles.shape[0]

    def is_empty(self):
        return self.num_triangles == 0

    def face_cross(self):
        corners = self.vertices[self.triangles]
        return np.cross(corners[:, 1] - corners[:, 0], corners[:, 2] - corners[:, 0])

    def face_areas(self):
        return 0.5 * np.linalg.norm(self.face_cross(), axis=1)

    def face_normals(self):
        cross = self.face_cross()
        norm = np.linalg.norm(cross, axis=1, keepdims=True)
        return cross / np.where(norm > 0.0, norm, 1.0)

    def edge_counts(self):
        """Unique undirected edges (E, 2) and the number of incident triangles of each."""
        if self.is_empty():
            return np.zeros((0, 2), dtype=np.int64), np.zeros((0,), dtype=np.int64)
        edges = np.concatenate([
            self.triangles[:, [0, 1]], self.triangles[:, [1, 2]], self.triangles[:, [2, 0]]
        ])
        edges = np.sort(edges, axis=1)
        return np.unique(edges, axis=0, return_counts=True)

    def boundary_edges(self):
        edges, counts = self.edge_counts()
        return edges[counts == 1]

    def is_watertight(self):
        _, counts = self.edge_counts()
        return counts.size > 0 and bool(np.all(counts == 2))

    def remove_degenerate(self, *, tolerance=1e-12):
        """Drops triangles with area at most the tolerance and unreferenced vertices."""
        if self.is_empty():
            return TriangleMesh(vertices=np.zeros((0, 3)), triangles=np.zeros((0, 3)))
        keep = self.face_areas() > tolerance
        triangles = self.triangles[keep]
        used, inverse = np.unique(triangles, return_inverse=True)
        return TriangleMesh(
            vertices=self.vertices[used], triangles=inverse.reshape(-1, 3),
            vertex_normals=(None if self.vertex_normals is None else self.vertex_normals[used]),
            vertex_scalars={name: np.asarray(v)[used] for name, v in self.vertex_scalars.items()}
        )


# OBJ comment records carrying per-vertex scalars
scalar_records = dict(mean_curvature='vH', gaussian_curvature='vK')


def export_obj(mesh, path):
    """
    Writes an ASCII OBJ file with 9 significant digits and 1-based face indices.
    """
    lines = ['# dudf mesh {} vertices {} triangles'.format(mesh.num_vertices, mesh.num_triangles)]
    for vertex in mesh.vertices:
        lines.append('v {:.9g} {:.9g} {:.9g}'.format(*vertex))
    if mesh.vertex_normals is not None:
        for normal in mesh.vertex_normals:
            lines.append('vn {:.9g} {:.9g} {:.9g}'.format(*normal))
    for name, values in mesh.vertex_scalars.items():
        record = scalar_records.get(name, name)
        for value in values:
            lines.append('# {} {:.9g}'.format(record, value))
    for triangle in mesh.triangles:
        if mesh.vertex_normals is None:
            lines.append('f {} {} {}'.format(*(triangle + 1)))
        else:
            lines.append('f {0}//{0} {1}//{1} {2}//{2}'.format(*(triangle + 1)))

    directory = os.path.dirname(path)
    if directory != '' and not os.path.isdir(directory):
        os.makedirs(directory)
    with open(path, 'w') as filehandle:
        filehandle.write('\n'.join(lines) + '\n')
    logging.getLogger(__name__).info(
        "Exported mesh with {} triangles to {}.".format(mesh.num_triangles, path)
    )


def load_obj(path):
    """
    Reads vertices, optional vertex normals, triangulated faces and per-vertex scalar comment
    records of an OBJ file. Polygons are fan-triangulated.
    """
    records = {record: name for name, record in scalar_records.items()}
    vertices, normals, triangles = list(), list(), list()
    scalars = dict()
    with open(path) as filehandle:
        for line_number, line in enumerate(filehandle, start=1):
            tokens = line.split()
            if len(tokens) == 0:
                continue
            try:
                if tokens[0] == 'v':
                    vertices.append([float(x) for x in tokens[1:4]])
                    if len(vertices[-1]) != 3:
                        raise ValueError
                elif tokens[0] == 'vn':
                    normals.append([float(x) for x in tokens[1:4]])
                    if len(normals[-1]) != 3:
                        raise ValueError
                elif tokens[0] == 'f':
                    indices = [int(token.split('/')[0]) for token in tokens[1:]]
                    if len(indices) < 3:
                        raise ValueError
                    indices = [i - 1 if i > 0 else len(vertices) + i for i in indices]
                    for n in range(1, len(indices) - 1):
                        triangles.append([indices[0], indices[n], indices[n + 1]])
                elif tokens[0] == '#' and len(tokens) == 3 and tokens[1] in records:
                    scalars.setdefault(records[tokens[1]], list()).append(float(tokens[2]))
            except ValueError:
                raise FormatError("Malformed OBJ record", path=path, line=line_number)

    vertex_normals = None
    if len(normals) > 0:
        if len(normals) != len(vertices):
            raise FormatError(
                "OBJ vertex normal count {} differs from vertex count {}".format(
                    len(normals), len(vertices)
                ), path=path
            )
        vertex_normals = np.asarray(normals)
    try:
        return TriangleMesh(
            vertices=np.asarray(vertices), triangles=np.asarray(triangles),
            vertex_normals=vertex_normals,
            vertex_scalars={name: np.asarray(values) for name, values in scalars.items()}
        )
    except DudfError as exc:
        raise FormatError(str(exc), path=path)
