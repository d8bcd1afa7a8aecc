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

import json
import logging
import os

import numpy as np

from dudf import CheckpointError, DudfError
from dudf.core.field_math import ScalingParams
from dudf.core.networks import SirenNetwork


MAGIC = 'DUDF1'

# Parameters are stored as little-endian float32
PARAMETER_DTYPE = np.dtype('<f4')

# Training configuration echo, stored next to the checkpoint
ECHO_SUFFIX = '.json'


class Checkpoint(object):
    """
    Trained network with the scaling it was trained for.

    Args:
        net (SirenNetwork): Network (<span style="color:#C00000"><b>required</b></span>).
        params (ScalingParams): Scaling parameters
            (<span style="color:#C00000"><b>required</b></span>).
        seed (int): Training seed (<span style="color:#00C000"><b>default</b></span>: 0).
        target ("scaled" | "distance"): Field the network was trained to fit
            (<span style="color:#00C000"><b>default</b></span>: "scaled").
        config (dict): Training configuration echo
            (<span style="color:#00C000"><b>default</b></span>: none).
    """

    def __init__(self, *, net, params, seed=0, target='scaled', config=None):
        self.net = net
        self.params = params
        self.seed = seed
        self.target = target
        self.config = config

    @property
    def version(self):
        return MAGIC


def layer_shapes(*, hidden_layers, width):
    sizes = [3] + [width] * hidden_layers + [1]
    return [((fan_out, fan_in), (fan_out,)) for fan_in, fan_out in zip(sizes[:-1], sizes[1:])]


def parameter_count(*, hidden_layers, width):
    return sum(int(np.prod(w)) + int(np.prod(b)) for w, b in layer_shapes(
        hidden_layers=hidden_layers, width=width
    ))


def config_echo(config):
    """
    JSON-compatible record of a `TrainConfig`.
    """
    values = config.to_dict()
    values['params'] = dict(alpha=config.params.alpha)
    values['weights'] = config.weights.to_dict()
    values['lr_phases'] = [
        dict(fraction=phase.fraction, learning_rate=phase.learning_rate, cosine=phase.cosine)
        for phase in config.lr_phases
    ]
    return values


def echo_path(path):
    return path + ECHO_SUFFIX


def save_checkpoint(net, params, path, *, seed=None, config=None):
    """
    Writes the header line `DUDF1 <hidden_layers> <width> <omega0> <alpha> <seed>` followed by
    all parameters as little-endian float32, per layer the row-major weights then the bias.
    Given a `TrainConfig`, its echo is written to `<path>.json`.
    """
    if seed is None:
        seed = 0 if net.seed is None else net.seed
    header = '{} {} {} {!r} {!r} {}\n'.format(
        MAGIC, net.hidden_layers, net.width, net.omega0, params.alpha, int(seed)
    )
    payload = np.concatenate([
        array.reshape(-1) for weights, bias in net.layer_arrays() for array in (weights, bias)
    ]).astype(PARAMETER_DTYPE)

    directory = os.path.dirname(path)
    if directory != '' and not os.path.isdir(directory):
        os.makedirs(directory)
    with open(path, 'wb') as filehandle:
        filehandle.write(header.encode('ascii'))
        filehandle.write(payload.tobytes())
    if config is not None:
        with open(echo_path(path), 'w') as filehandle:
            json.dump(config_echo(config), filehandle, indent=2, sort_keys=True)
    elif os.path.isfile(echo_path(path)):
        # Stale echo of an earlier run
        os.remove(echo_path(path))
    logging.getLogger(__name__).info("Saved checkpoint {} ({} parameters).".format(
        path, payload.size
    ))


def load_echo(path):
    filename = echo_path(path)
    if not os.path.isfile(filename):
        return None
    try:
        with open(filename, 'r') as filehandle:
            config = json.load(filehandle)
    except ValueError as exc:
        raise CheckpointError("malformed configuration echo: {}".format(exc), path=filename)
    if not isinstance(config, dict):
        raise CheckpointError("configuration echo is not a mapping", path=filename)
    if config.get('target', 'scaled') not in ('scaled', 'distance'):
        raise CheckpointError(
            "unknown target {}".format(config['target']), path=filename
        )
    return config


def load_checkpoint(path):
    """
    Reads a checkpoint written by `save_checkpoint`, parameters restored at float32 precision,
    plus its configuration echo if present. Without echo the target is "scaled".
    """
    if not os.path.isfile(path):
        raise DudfError.exists_not(name='checkpoint file', value=path)
    with open(path, 'rb') as filehandle:
        content = filehandle.read()

    newline = content.find(b'\n')
    if newline < 0:
        raise CheckpointError("missing header line", path=path)
    try:
        tokens = content[:newline].decode('ascii').split()
    except UnicodeDecodeError:
        raise CheckpointError("unrecognized version, expected {}".format(MAGIC), path=path)
    if len(tokens) == 0 or tokens[0] != MAGIC:
        raise CheckpointError("unrecognized version {}, expected {}".format(
            (tokens[0] if len(tokens) > 0 else 'none'), MAGIC
        ), path=path)
    if len(tokens) != 6:
        raise CheckpointError("expected 6 header fields, got {}".format(len(tokens)), path=path)
    try:
        hidden_layers, width = int(tokens[1]), int(tokens[2])
        omega0, alpha, seed = float(tokens[3]), float(tokens[4]), int(tokens[5])
    except ValueError:
        raise CheckpointError("malformed header {}".format(' '.join(tokens)), path=path)
    if hidden_layers < 1 or width < 1:
        raise CheckpointError(
            "invalid network dims {}x{}".format(hidden_layers, width), path=path
        )

    payload = content[newline + 1:]
    expected = parameter_count(hidden_layers=hidden_layers, width=width) * PARAMETER_DTYPE.itemsize
    if len(payload) != expected:
        raise CheckpointError(
            "parameter payload of {} bytes, expected {} bytes for {}x{}".format(
                len(payload), expected, hidden_layers, width
            ), path=path
        )
    values = np.frombuffer(payload, dtype=PARAMETER_DTYPE).astype(np.float64)

    parameters = list()
    offset = 0
    for weights_shape, bias_shape in layer_shapes(hidden_layers=hidden_layers, width=width):
        size = int(np.prod(weights_shape))
        weights = values[offset: offset + size].reshape(weights_shape)
        offset += size
        bias = values[offset: offset + bias_shape[0]]
        offset += bias_shape[0]
        parameters.append((weights, bias))
    assert offset == values.size

    try:
        params = ScalingParams(alpha=alpha)
        net = SirenNetwork(parameters=parameters, omega0=omega0, seed=seed)
    except DudfError as exc:
        raise CheckpointError(str(exc), path=path)
    config = load_echo(path)
    target = 'scaled' if config is None else config.get('target', 'scaled')
    return Checkpoint(net=net, params=params, seed=seed, target=target, config=config)
