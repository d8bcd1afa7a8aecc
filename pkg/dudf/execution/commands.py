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

from dudf import DudfError
from dudf.execution.ablation import ablation_matrix, run_ablation
from dudf.execution.checkpoint import load_checkpoint, save_checkpoint
from dudf.execution.inputs import reference_points, training_cloud
from dudf.execution.trainer import train
from dudf.metrics import append_results, evaluate_reconstruction
from dudf.reconstruction import clamp_grid_distance, evaluate_grid, export_obj, \
    extract_mesh_gradient_mc, load_obj, recover_grid_distance, TriangleMesh, write_grid
from dudf.reconstruction.grid import MIN_RESOLUTION
from dudf.rendering import curvatures, render, write_image
from dudf.sampling import build_index, sample_batch


CHECKPOINT_FILE = 'model.dudf'
LOG_FILE = 'train.log'
PLOT_FILE = 'train.png'
METRICS_FILE = 'metrics.txt'
RESULTS_FILE = 'results.tsv'


def _makedirs(directory):
    if directory != '' and not os.path.isdir(directory):
        os.makedirs(directory)


def _distance_grid(loaded, resolution):
    grid = evaluate_grid(loaded.net, resolution, loaded.params)
    if loaded.target == 'scaled':
        return recover_grid_distance(grid, loaded.params)
    return clamp_grid_distance(grid)


def cmd_train(run, *, use_tqdm=False, plot=False):
    """
    Trains on the configured input and writes checkpoint and loss log to the output directory.

    Returns:
        Tuple of the checkpoint path and the `TrainingLog`.
    """
    config = run.train_config()
    cloud, _ = training_cloud(run)
    net, log = train(cloud, config, use_tqdm=use_tqdm)

    directory = run.output_dir
    _makedirs(directory)
    path = os.path.join(directory, CHECKPOINT_FILE)
    save_checkpoint(net, config.params, path, seed=config.seed, config=config)
    log.write(os.path.join(directory, LOG_FILE))
    if plot and len(log) > 0:
        log.plot(os.path.join(directory, PLOT_FILE))
    return path, log


def cmd_reconstruct(checkpoint, out_path, *, resolution, curvature=False, dump_grid=None):
    """
    Reconstructs the zero level set of a checkpoint as OBJ mesh, optionally with per-vertex
    |H| and K records and a grid dump.
    """
    if not isinstance(resolution, int) or resolution < MIN_RESOLUTION:
        raise DudfError.value(
            name='reconstruct', argument='resolution', value=resolution,
            hint='< {}'.format(MIN_RESOLUTION)
        )
    loaded = load_checkpoint(checkpoint)
    grid = _distance_grid(loaded, resolution)
    if dump_grid is not None:
        write_grid(grid, dump_grid)
    mesh = extract_mesh_gradient_mc(grid)
    if curvature and not mesh.is_empty():
        mean, gaussian, _ = curvatures(loaded.net, mesh.vertices)
        mesh = TriangleMesh(
            vertices=mesh.vertices, triangles=mesh.triangles,
            vertex_scalars=dict(mean_curvature=mean, gaussian_curvature=gaussian)
        )
    if mesh.is_empty():
        logging.getLogger(__name__).warning("Reconstruction of {} is empty.".format(checkpoint))
    export_obj(mesh, out_path)
    return mesh


def cmd_render(checkpoint, run, out_path):
    """
    Renders a checkpoint with the configured camera and settings to a PPM image.

    Returns:
        `RenderReport` of the image.
    """
    loaded = load_checkpoint(checkpoint)
    image, report = render(
        loaded.net, loaded.params, run.camera(), run.render_settings(), target=loaded.target
    )
    write_image(image, out_path)
    return report


def cmd_eval(run, *, checkpoint=None, mesh=None, reference=None):
    """
    Evaluates a checkpoint (reconstructed at the configured resolution) or a mesh file against
    ground truth, writes the report to the output directory and appends it to the results
    table.
    """
    if (checkpoint is None) == (mesh is None):
        raise DudfError.required(
            name='eval', argument='checkpoint or mesh', condition='exactly one'
        )
    if reference is None and not run.has_input:
        raise DudfError.required(name='eval', argument='reference', condition='no [input]')
    resolution = run['reconstruct']['resolution']
    if checkpoint is not None:
        loaded = load_checkpoint(checkpoint)
        surface = extract_mesh_gradient_mc(_distance_grid(loaded, resolution))
        source = checkpoint
    else:
        if not os.path.isfile(mesh):
            raise DudfError.exists_not(name='mesh file', value=mesh)
        surface = load_obj(mesh)
        resolution = None
        source = mesh

    report = evaluate_reconstruction(
        surface, reference_points(run, path=reference), n=run['eval']['samples'],
        seed=run['eval']['seed'], resolution=resolution
    )
    directory = run.output_dir
    _makedirs(directory)
    with open(os.path.join(directory, METRICS_FILE), 'w') as filehandle:
        filehandle.write(report.to_text())
    results = run.resolve_path(run['eval']['results'])
    if results is None:
        results = os.path.join(directory, RESULTS_FILE)
    append_results(results, dict(source=source, **report.to_dict()))
    return report


def cmd_ablate(run, *, use_tqdm=False):
    """
    Runs the configured ablation matrix and writes the results table.

    Returns:
        Results table (pandas.DataFrame).
    """
    settings = run['ablate']
    cells = ablation_matrix(
        run.train_config(), alphas=settings['alphas'], toggles=settings['toggles'],
        targets=settings['targets']
    )
    cloud, _ = training_cloud(run)
    reference = reference_points(run)
    frame = run_ablation(
        cells, cloud, reference, resolution=run['reconstruct']['resolution'],
        samples=run['eval']['samples'], seed=run['eval']['seed'], use_tqdm=use_tqdm
    )
    path = run.resolve_path(settings['results'])
    if not os.path.isabs(path) and run.path is None:
        path = os.path.join(run.output_dir, path)
    _makedirs(os.path.dirname(path))
    frame.to_csv(path, sep='\t', index=False)
    logging.getLogger(__name__).info("Wrote {} ablation rows to {}.".format(len(frame), path))
    return frame


def cmd_sample(run, out_path):
    """
    Writes one training batch of the configured input as text for inspection.
    """
    config = run.train_config()
    cloud, _ = training_cloud(run)
    batch = sample_batch(
        cloud=cloud, index=build_index(cloud), n_total=config.batch_size, sigma=config.sigma,
        seed=config.seed
    )
    _makedirs(os.path.dirname(out_path))
    with open(out_path, 'w') as filehandle:
        filehandle.write(batch.to_text())
    return batch
