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

import argparse
import logging
import sys

from dudf import DudfConfig, DudfError, util
from dudf.execution import cmd_ablate, cmd_eval, cmd_reconstruct, cmd_render, cmd_sample, \
    cmd_train, load_run_config, RunConfig


EXIT_SUCCESS = 0
EXIT_USAGE = 1
EXIT_FAILURE = 2


class ArgumentParser(argparse.ArgumentParser):

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, '{}: error: {}\n'.format(self.prog, message))


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        '-c', '--config', type=str, default=None, help='Run configuration file (key = value)'
    )
    common.add_argument(
        '--seed', type=int, default=None, help='Random seed, overrides the configuration'
    )
    common.add_argument(
        '--threads', type=int, default=None,
        help='Cap on worker threads (default: DUDF_THREADS environment variable)'
    )
    common.add_argument(
        '--deterministic', action='store_true', help='Bit-identical reruns for fixed seeds'
    )
    common.add_argument(
        '--log-level', type=str, choices=tuple(util.log_levels), default='warning',
        help='Logging level'
    )

    parser = ArgumentParser(description='Hyperbolically scaled unsigned distance fields')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    train = commands.add_parser('train', parents=[common], help='Train a network')
    train.add_argument('--plot', action='store_true', help='Plot the loss terms')
    train.add_argument('--tqdm', action='store_true', help='Show a progress bar')

    reconstruct = commands.add_parser(
        'reconstruct', parents=[common], help='Extract a mesh from a checkpoint'
    )
    reconstruct.add_argument('checkpoint', type=str, help='Checkpoint file')
    reconstruct.add_argument('mesh', type=str, help='Output OBJ file')
    reconstruct.add_argument(
        '-N', '--resolution', type=int, default=None, help='Grid resolution per axis (>= 8)'
    )
    reconstruct.add_argument(
        '--curvature', action='store_true', help='Append per-vertex |H| and K records'
    )
    reconstruct.add_argument(
        '--dump-grid', type=str, default=None, help='Write the recovered distance grid'
    )

    render = commands.add_parser('render', parents=[common], help='Render a checkpoint')
    render.add_argument('checkpoint', type=str, help='Checkpoint file')
    render.add_argument('image', type=str, help='Output PPM file')

    evaluate = commands.add_parser('eval', parents=[common], help='Evaluate a reconstruction')
    source = evaluate.add_mutually_exclusive_group(required=True)
    source.add_argument('--checkpoint', type=str, default=None, help='Checkpoint file')
    source.add_argument('--mesh', type=str, default=None, help='OBJ mesh file')
    evaluate.add_argument(
        '--reference', type=str, default=None,
        help='Ground-truth points in mesh coordinates (default: configured input)'
    )

    ablate = commands.add_parser('ablate', parents=[common], help='Run an ablation matrix')
    ablate.add_argument('--tqdm', action='store_true', help='Show a progress bar')

    sample = commands.add_parser('sample', parents=[common], help='Dump a training batch')
    sample.add_argument('batch', type=str, help='Output text file')
    return parser


def configure(args):
    """
    Loads the run configuration with command-line overrides and applies process settings.
    """
    run = RunConfig() if args.config is None else load_run_config(args.config)
    deterministic = args.deterministic or run['train']['deterministic']
    if args.seed is not None:
        run = run.replace('train', seed=args.seed).replace('eval', seed=args.seed)
    if args.deterministic:
        run = run.replace('train', deterministic=True)
    if getattr(args, 'resolution', None) is not None:
        run = run.replace('reconstruct', resolution=args.resolution)
    if args.command in ('train', 'ablate', 'sample') and not run.has_input:
        raise DudfError.required(name=args.command, argument='[input] path or shape')
    run.validate()

    config = DudfConfig(
        deterministic=deterministic, threads=args.threads, log_level=args.log_level
    )
    config.apply()
    return run


def execute(args, run):
    if args.command == 'train':
        path, log = cmd_train(run, use_tqdm=args.tqdm, plot=args.plot)
        print('checkpoint={}\niterations={}'.format(path, len(log)))
    elif args.command == 'reconstruct':
        settings = run['reconstruct']
        dump_grid = settings['dump_grid'] if args.dump_grid is None else args.dump_grid
        mesh = cmd_reconstruct(
            args.checkpoint, args.mesh, resolution=settings['resolution'],
            curvature=(args.curvature or settings['curvature']), dump_grid=dump_grid
        )
        print('vertices={}\ntriangles={}\nboundary_edges={}'.format(
            mesh.num_vertices, mesh.num_triangles, len(mesh.boundary_edges())
        ))
    elif args.command == 'render':
        report = cmd_render(args.checkpoint, run, args.image)
        sys.stdout.write(report.to_text())
    elif args.command == 'eval':
        report = cmd_eval(
            run, checkpoint=args.checkpoint, mesh=args.mesh, reference=args.reference
        )
        sys.stdout.write(report.to_text())
    elif args.command == 'ablate':
        frame = cmd_ablate(run, use_tqdm=args.tqdm)
        sys.stdout.write(frame.to_string(index=False) + '\n')
    elif args.command == 'sample':
        batch = cmd_sample(run, args.batch)
        print('samples={}'.format(batch.size))


def main(argv=None):
    args = build_parser().parse_args(args=argv)
    logging.basicConfig(
        level=util.log_levels[args.log_level], format='%(levelname)s %(name)s: %(message)s'
    )

    try:
        run = configure(args)
    except DudfError as exc:
        sys.stderr.write('error: {}\n'.format(exc))
        return EXIT_USAGE

    try:
        execute(args, run)
    except (DudfError, OSError) as exc:
        sys.stderr.write('error: {}\n'.format(exc))
        return EXIT_FAILURE
    return EXIT_SUCCESS


if __name__ == '__main__':
    sys.exit(main())
