"""
generate: seeded random frames and subspace files for experiments and tests
"""

import click

from src.commands.common import FusionGroup, emit, handle_errors, logger, require
from src.linalg.sampling import make_rng, random_frame, random_subspace
from src.models.storage import save_subspace_file, write_frame_csv


@click.group('generate', cls=FusionGroup)
def generate():
    """Random test data"""


@generate.command('frame')
@click.option('--dim', 'n', type=int, required=True, help='Ambient dimension N')
@click.option('--count', 'm', type=int, required=True, help='Number of vectors M >= N')
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--output', 'output_path', required=True, type=click.Path(dir_okay=False), help='CSV file')
@handle_errors
def generate_frame(n, m, seed, output_path):
    """Gaussian M x N frame, one vector per row"""
    require(n >= 1 and m >= n, f"need 1 <= N <= M, got N={n}, M={m}")
    X = random_frame(make_rng(seed), n, m)
    write_frame_csv(output_path, X)
    logger.info("frame_generated", ambient=n, count=m, seed=seed)
    emit({'success': True, 'output': output_path, 'shape': [m, n]})


@generate.command('subspaces')
@click.option('--dim', 'n', type=int, required=True, help='Ambient dimension N')
@click.option('--count', type=int, required=True, help='Number of subspaces')
@click.option('--rank', 'k', type=int, required=True, help='Dimension of each subspace')
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--output', 'output_path', required=True, type=click.Path(dir_okay=False), help='JSON file')
@handle_errors
def generate_subspaces(n, count, k, seed, output_path):
    """Gaussian bases, unit weights"""
    require(1 <= k <= n and count >= 1, f"need 1 <= k <= N and count >= 1, got N={n}, k={k}, count={count}")
    rng = make_rng(seed)
    subspaces = [random_subspace(rng, n, k) for _ in range(count)]
    save_subspace_file(output_path, subspaces)
    logger.info("subspaces_generated", ambient=n, rank=k, count=count, seed=seed)
    emit({'success': True, 'output': output_path, 'count': count})
