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

import os

from dudf import DudfError, FormatError
from dudf.core.field_math import ScalingParams
from dudf.core.objectives import LossWeights
from dudf.core.parameters import LearningRatePhase
from dudf.core.shapes import AnalyticShape, shape_modules
from dudf.execution.trainer import TrainConfig
from dudf.reconstruction.grid import MIN_RESOLUTION
from dudf.rendering import Camera, PointLight, RenderSettings
from dudf.sampling.cloud import cloud_formats


def _string(value):
    return value


def _int(value):
    return int(value)


def _float(value):
    return float(value)


def _bool(value):
    if value.lower() in ('true', 'yes', '1'):
        return True
    elif value.lower() in ('false', 'no', '0'):
        return False
    raise ValueError(value)


def _vector(value):
    vector = tuple(float(x) for x in value.replace(',', ' ').split())
    if len(vector) != 3:
        raise ValueError(value)
    return vector


def _float_list(value):
    return tuple(float(x) for x in value.split(',') if x.strip() != '')


def _string_list(value):
    # Semicolon-separated, so that toggles like "lambda_e,lambda_g=0" stay one entry
    return tuple(x.strip() for x in value.split(';') if x.strip() != '')


def _choice(*options):
    def parse(value):
        if value not in options:
            raise ValueError(value)
        return value

    return parse


# Per section: key -> (parser, default)
config_keys = dict(
    input=dict(
        path=(_string, None), format=(_choice(*cloud_formats.values()), None),
        shape=(_choice(*shape_modules), None), radius=(_float, None),
        major_radius=(_float, None), minor_radius=(_float, None), points=(_int, 20000),
        margin=(_float, 0.1), output_dir=(_string, 'output')
    ),
    train=dict(
        iterations=(_int, 1500), batch_size=(_int, 3000), alpha=(_float, 100.0),
        hidden_layers=(_int, 4), width=(_int, 64), omega0=(_float, 30.0), sigma=(_float, 0.01),
        target=(_choice('scaled', 'distance'), 'scaled'), clip_norm=(_float, 10.0),
        lambda_e=(_float, 1e4), lambda_d=(_float, 1e4), lambda_n=(_float, 1e4),
        lambda_g=(_float, 1e3), lambda_mu=(_float, 1e5), lambda_sigma=(_float, 1e5),
        learning_rates=(_float_list, (1e-4, 1e-5, 1e-7)), seed=(_int, 0),
        deterministic=(_bool, False)
    ),
    reconstruct=dict(
        resolution=(_int, 128), curvature=(_bool, False), dump_grid=(_string, None)
    ),
    render=dict(
        position=(_vector, (1.2, 0.9, 1.5)), look_at=(_vector, (0.0, 0.0, 0.0)),
        up=(_vector, (0.0, 1.0, 0.0)), fov=(_float, 45.0), width=(_int, 128),
        height=(_int, 128), max_steps=(_int, 256), epsilon=(_float, 1e-4), safety=(_float, 0.9),
        background=(_vector, (1.0, 1.0, 1.0)), light_position=(_vector, (2.0, 2.0, 2.0)),
        light_intensity=(_float, 1.0)
    ),
    eval=dict(samples=(_int, 100000), seed=(_int, 0), results=(_string, None)),
    ablate=dict(
        alphas=(_float_list, ()), toggles=(_string_list, ()), targets=(_string_list, ()),
        results=(_string, 'ablation.tsv')
    )
)


class RunConfig(object):
    """
    Parsed run configuration: every key of `config_keys`, explicit or default.

    Args:
        values (dict[section, dict[key, value]]): Explicit settings
            (<span style="color:#00C000"><b>default</b></span>: none).
        path (string): Source file, relative paths in the configuration are resolved against
            its directory (<span style="color:#00C000"><b>default</b></span>: none).
    """

    def __init__(self, *, values=None, path=None):
        values = dict() if values is None else values
        resolved = dict()
        for section, keys in config_keys.items():
            given = dict(values.get(section, ()))
            for key in given:
                if key not in keys:
                    raise DudfError.invalid(name='RunConfig', argument='{}.{}'.format(section, key))
            resolved[section] = {key: given.get(key, default) for key, (_, default) in keys.items()}
        for section in values:
            if section not in config_keys:
                raise DudfError.invalid(name='RunConfig', argument=section)
        super().__setattr__('values', resolved)
        super().__setattr__('explicit', {s: set(values.get(s, ())) for s in config_keys})
        super().__setattr__('path', path)

        source = resolved['input']
        if source['path'] is not None and source['shape'] is not None:
            raise DudfError.invalid(
                name='RunConfig', argument='input.shape', condition='input.path given'
            )

    def __getitem__(self, section):
        return self.values[section]

    def __setattr__(self, name, value):
        raise NotImplementedError

    def replace(self, section, **kwargs):
        values = {s: {k: self.values[s][k] for k in self.explicit[s]} for s in config_keys}
        values[section].update(kwargs)
        return RunConfig(values=values, path=self.path)

    def resolve_path(self, path):
        if path is None or os.path.isabs(path) or self.path is None:
            return path
        return os.path.join(os.path.dirname(os.path.abspath(self.path)), path)

    @property
    def output_dir(self):
        return self.resolve_path(self.values['input']['output_dir'])

    @property
    def has_input(self):
        source = self.values['input']
        return source['path'] is not None or source['shape'] is not None

    def shape(self):
        source = self.values['input']
        if source['shape'] is None:
            return None
        kwargs = {
            key: source[key] for key in ('radius', 'major_radius', 'minor_radius')
            if source[key] is not None
        }
        return AnalyticShape.create(source['shape'], **kwargs)

    def params(self):
        return ScalingParams(alpha=self.values['train']['alpha'])

    def weights(self):
        train = self.values['train']
        return LossWeights(**{name: train[name] for name in LossWeights.names})

    def lr_phases(self):
        rates = self.values['train']['learning_rates']
        if len(rates) == 0:
            raise DudfError.required(name='RunConfig', argument='train.learning_rates')
        fraction = 1.0 / len(rates)
        return [
            LearningRatePhase(
                fraction=fraction, learning_rate=rate,
                cosine=(len(rates) > 1 and n == len(rates) - 1)
            ) for n, rate in enumerate(rates)
        ]

    def train_config(self):
        train = self.values['train']
        return TrainConfig(
            iterations=train['iterations'], batch_size=train['batch_size'], params=self.params(),
            weights=self.weights(), lr_phases=self.lr_phases(), seed=train['seed'],
            deterministic=train['deterministic'], hidden_layers=train['hidden_layers'],
            width=train['width'], omega0=train['omega0'], sigma=train['sigma'],
            target=train['target'], clip_norm=train['clip_norm']
        )

    def camera(self):
        render = self.values['render']
        return Camera(
            position=render['position'], look_at=render['look_at'], up=render['up'],
            fov=render['fov'], width=render['width'], height=render['height']
        )

    def validate(self):
        """
        Builds every derived configuration object once, raising on invalid settings.
        """
        self.shape()
        self.train_config()
        self.camera()
        self.render_settings()
        if self.values['reconstruct']['resolution'] < MIN_RESOLUTION:
            raise DudfError.value(
                name='RunConfig', argument='reconstruct.resolution',
                value=self.values['reconstruct']['resolution'],
                hint='< {}'.format(MIN_RESOLUTION)
            )
        return self

    def render_settings(self):
        render = self.values['render']
        return RenderSettings(
            max_steps=render['max_steps'], epsilon=render['epsilon'], safety=render['safety'],
            background=render['background'], lights=[PointLight(
                position=render['light_position'], intensity=render['light_intensity']
            )]
        )


def parse_run_config(text, *, path=None):
    """
    Parses `key = value` lines grouped under `[section]` headers, `#` starts a comment.
    """
    values = dict()
    section = None
    for line_number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if line == '':
            continue
        if line.startswith('['):
            if not line.endswith(']'):
                raise FormatError(
                    "Malformed section header {}".format(line), path=path, line=line_number
                )
            section = line[1:-1].strip()
            if section not in config_keys:
                raise FormatError("Unknown section {}".format(section), path=path, line=line_number)
            values.setdefault(section, dict())
            continue
        if '=' not in line:
            raise FormatError("Expected key = value", path=path, line=line_number)
        key, value = (x.strip() for x in line.split('=', 1))
        if section is None:
            raise FormatError(
                "Key {} outside of a section".format(key), path=path, line=line_number
            )
        if key not in config_keys[section]:
            raise FormatError(
                "Unknown key {} in section {}".format(key, section), path=path, line=line_number
            )
        if key in values[section]:
            raise FormatError("Duplicate key {}".format(key), path=path, line=line_number)
        parser, _ = config_keys[section][key]
        try:
            values[section][key] = parser(value)
        except ValueError:
            raise FormatError(
                "Invalid value for key {}: {}".format(key, value), path=path, line=line_number
            )
    try:
        return RunConfig(values=values, path=path)
    except DudfError as exc:
        raise FormatError(str(exc), path=path)


def load_run_config(path):
    if not os.path.isfile(path):
        raise DudfError.exists_not(name='config file', value=path)
    with open(path) as filehandle:
        return parse_run_config(filehandle.read(), path=path)
