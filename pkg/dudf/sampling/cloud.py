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


class OrientedPointCloud(object):
    """
    Surface samples with one unit normal per point.

    Args:
        positions ((N, 3) array): Point positions
            (<span style="color:#C00000"><b>required</b></span>).
        normals ((N, 3) array): Normals, normalized on construction
            (<span style="color:#C00000"><b>required</b></span>).
    """

    def __init__(self, *, positions, normals):
        positions = np.asarray(positions, dtype=np.float64).reshape(-1, 3)
        normals = np.asarray(normals, dtype=np.float64).reshape(-1, 3)
        if positions.shape[0] == 0:
            raise DudfError.required(
                name='OrientedPointCloud', argument='positions', expected='nonempty'
            )
        if normals.shape != positions.shape:
            raise DudfError.mismatch(
                name='OrientedPointCloud', argument='normals', value1=positions.shape[0],
                value2=normals.shape[0]
            )
        if not np.all(np.isfinite(positions)) or not np.all(np.isfinite(normals)):
            raise DudfError.value(
                name='OrientedPointCloud', argument='positions', value='non-finite entries'
            )
        norms = np.linalg.norm(normals, axis=1)
        if np.any(norms == 0.0):
            raise DudfError.value(
                name='OrientedPointCloud', argument='normals',
                value='zero normal at point {}'.format(int(np.flatnonzero(norms == 0.0)[0]))
            )
        self.positions = positions
        self.normals = normals / norms[:, None]

    def __len__(self):
        return self.positions.shape[0]

    def subset(self, indices):
        return OrientedPointCloud(positions=self.positions[indices], normals=self.normals[indices])


class CubeTransform(object):
    """
    Uniform scale and translation, normalized = scale * (original - center).
    """

    def __init__(self, *, scale, center):
        self.scale = float(scale)
        self.center = np.asarray(center, dtype=np.float64)

    def apply(self, x):
        return self.scale * (np.asarray(x, dtype=np.float64) - self.center)

    def inverse(self, x):
        return np.asarray(x, dtype=np.float64) / self.scale + self.center


def cube_transform(positions, *, margin=0.1):
    """
    Transform centering the bounding box of the positions at the origin and scaling its longest
    side to 2 (1 - margin).
    """
    if not 0.0 <= margin < 1.0:
        raise DudfError.value(name='normalize_to_cube', argument='margin', value=margin)
    positions = np.asarray(positions, dtype=np.float64)
    lower = positions.min(axis=0)
    upper = positions.max(axis=0)
    extent = float((upper - lower).max())
    if extent == 0.0:
        raise DudfError.invalid(
            name='normalize_to_cube', argument='cloud', condition='all points identical'
        )
    return CubeTransform(
        scale=(2.0 * (1.0 - margin) / extent), center=(0.5 * (lower + upper))
    )


def normalize_to_cube(cloud, *, margin=0.1):
    """
    Centers the bounding box at the origin and scales its longest side to 2 (1 - margin).

    Returns:
        Tuple of the normalized cloud and the `CubeTransform` mapping original to normalized
        coordinates.
    """
    transform = cube_transform(cloud.positions, margin=margin)
    normalized = OrientedPointCloud(
        positions=transform.apply(cloud.positions), normals=cloud.normals
    )
    return normalized, transform


cloud_formats = dict(obj='obj', ply='ply', xyz='xyz', txt='xyz', pts='xyz')


def load_points(path, format=None):
    """
    Reads point positions and, if the file carries them, normals.

    Args:
        path (string): File path (<span style="color:#C00000"><b>required</b></span>).
        format ("obj" | "ply" | "xyz"): File format, OBJ with v/vn records, ASCII PLY with
            x y z [nx ny nz] vertex properties, or whitespace-separated x y z [nx ny nz] lines
            (<span style="color:#00C000"><b>default</b></span>: inferred from the extension).
    """
    if not os.path.isfile(path):
        raise DudfError.exists_not(name='point cloud file', value=path)
    if format is None:
        extension = os.path.splitext(path)[1][1:].lower()
        if extension not in cloud_formats:
            raise DudfError.value(
                name='load_points', argument='format', value=extension,
                hint='not in {{{}}}'.format(','.join(cloud_formats))
            )
        format = cloud_formats[extension]

    if format not in cloud_readers:
        raise DudfError.value(name='load_points', argument='format', value=format)
    positions, normals = cloud_readers[format](path)
    if len(positions) == 0:
        raise FormatError("Empty point cloud", path=path)
    positions = np.asarray(positions, dtype=np.float64).reshape(-1, 3)
    if normals is not None:
        normals = np.asarray(normals, dtype=np.float64).reshape(-1, 3)
    logging.getLogger(__name__).info("Loaded {} points from {}.".format(len(positions), path))
    return positions, normals


def load_cloud(path, format=None):
    """
    Reads an oriented point cloud, see `load_points` for the formats.
    """
    positions, normals = load_points(path, format=format)
    if normals is None:
        raise FormatError("Missing normals", path=path)
    try:
        return OrientedPointCloud(positions=positions, normals=normals)
    except DudfError as exc:
        raise FormatError(str(exc), path=path)


def _read_xyz(path):
    positions, normals = list(), list()
    columns = None
    with open(path) as filehandle:
        for line_number, line in enumerate(filehandle, start=1):
            line = line.split('#', 1)[0].strip()
            if line == '':
                continue
            tokens = line.replace(',', ' ').split()
            if len(tokens) not in (3, 6):
                raise FormatError(
                    "Expected 3 or 6 values x y z [nx ny nz], got {}".format(len(tokens)),
                    path=path, line=line_number
                )
            if columns is None:
                columns = len(tokens)
            elif len(tokens) != columns:
                raise FormatError("Missing normal", path=path, line=line_number)
            try:
                values = [float(token) for token in tokens]
            except ValueError:
                raise FormatError("Non-numeric value", path=path, line=line_number)
            positions.append(values[:3])
            normals.append(values[3:])
    if columns == 3:
        return positions, None
    return positions, normals


def _read_obj(path):
    positions, normals = list(), list()
    with open(path) as filehandle:
        for line_number, line in enumerate(filehandle, start=1):
            tokens = line.split()
            if len(tokens) == 0 or tokens[0] not in ('v', 'vn'):
                continue
            try:
                values = [float(token) for token in tokens[1:4]]
            except ValueError:
                raise FormatError("Non-numeric value", path=path, line=line_number)
            if len(values) != 3:
                raise FormatError("Expected 3 coordinates", path=path, line=line_number)
            (positions if tokens[0] == 'v' else normals).append(values)
    if len(normals) == 0:
        return positions, None
    if len(normals) != len(positions):
        raise FormatError(
            "Missing normals, {} v records but {} vn records".format(len(positions), len(normals)),
            path=path
        )
    return positions, normals


ply_positions = ('x', 'y', 'z')
ply_normals = ('nx', 'ny', 'nz')


def _read_ply(path):
    with open(path) as filehandle:
        lines = filehandle.read().splitlines()
    if len(lines) == 0 or lines[0].strip() != 'ply':
        raise FormatError("Missing ply magic", path=path, line=1)

    vertex_count = None
    properties = list()
    element = None
    body_start = None
    for line_number, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if len(tokens) == 0 or tokens[0] in ('comment', 'obj_info'):
            continue
        elif tokens[0] == 'format':
            if len(tokens) < 2 or tokens[1] != 'ascii':
                raise FormatError("Only ascii PLY is supported", path=path, line=line_number)
        elif tokens[0] == 'element':
            if len(tokens) != 3:
                raise FormatError("Malformed element record", path=path, line=line_number)
            element = tokens[1]
            if element == 'vertex':
                vertex_count = int(tokens[2])
        elif tokens[0] == 'property':
            if element == 'vertex':
                if tokens[1] == 'list':
                    raise FormatError("List vertex property", path=path, line=line_number)
                properties.append(tokens[-1])
        elif tokens[0] == 'end_header':
            body_start = line_number
            break
        else:
            raise FormatError("Unknown header record", path=path, line=line_number)

    if body_start is None or vertex_count is None:
        raise FormatError("Incomplete PLY header", path=path)
    wanted = ply_positions
    if any(name in properties for name in ply_normals):
        wanted = ply_positions + ply_normals
    for name in wanted:
        if name not in properties:
            raise FormatError("Missing vertex property {}".format(name), path=path)
    columns = [properties.index(name) for name in wanted]

    positions, normals = list(), list()
    for n in range(vertex_count):
        line_number = body_start + 1 + n
        if line_number > len(lines):
            raise FormatError(
                "Vertex count {} exceeds vertex records {}".format(vertex_count, n), path=path,
                line=line_number
            )
        tokens = lines[line_number - 1].split()
        if len(tokens) < len(properties):
            missing = properties[len(tokens)]
            raise FormatError(
                "Missing value for vertex property {}".format(missing), path=path,
                line=line_number
            )
        try:
            values = [float(tokens[c]) for c in columns]
        except ValueError:
            raise FormatError("Non-numeric value", path=path, line=line_number)
        positions.append(values[:3])
        normals.append(values[3:])
    if len(wanted) == 3:
        return positions, None
    return positions, normals


cloud_readers = dict(obj=_read_obj, ply=_read_ply, xyz=_read_xyz)
