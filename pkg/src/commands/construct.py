"""
construct: run a construction and write projections.json, report.json and artifacts.json

Every kind writes the same three files into --output DIR so the projections can be
fed straight back into ``verify``.
"""

from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import click

from src.commands.common import (
    FusionGroup,
    emit,
    handle_errors,
    logger,
    parse_float_list,
    parse_int_list,
    require,
    tolerance_options,
)
from src.config import Tolerances
from src.constructions import (
    WEIGHT_SCHEMES,
    TightFamily,
    minimum_member_count,
    parseval_from_frame,
    prescribed_diagonal,
    residual_chain,
    tight_chain,
    tight_chain_general,
    tight_pair,
)
from src.errors import InputError
from src.fusion import FusionFrame, structure_report
from src.linalg import Subspace
from src.linalg.sampling import make_rng, random_subspace
from src.models.storage import (
    load_subspace_file,
    read_frame_csv,
    report_payload,
    save_projection_file,
    subspaces_from_file,
    write_json,
)
from src.projections import gram

output_option = click.option('--output', 'output_dir', required=True, type=click.Path(file_okay=False),
                             help='Directory for projections.json, report.json and artifacts.json')


def _write_outputs(output_dir: str, kind: str, frame: FusionFrame, artifacts: Dict[str, Any],
                   tol: Tolerances) -> Dict[str, Any]:
    out = Path(output_dir)
    report = structure_report(frame, tol)
    payload = report_payload(report)
    save_projection_file(out / 'projections.json', frame.projections, frame.weights)
    write_json(out / 'report.json', payload)
    write_json(out / 'artifacts.json', {'kind': kind, **artifacts})
    logger.info("construct_finished", kind=kind, members=len(frame), is_tight=report.is_tight,
                is_identity_multiple=report.is_identity_multiple)
    return {
        'success': True,
        'kind': kind,
        'output': str(out),
        'members': len(frame),
        'is_frame': report.is_frame,
        'is_tight': report.is_tight,
        'tight_constant': report.tight_constant,
        'is_identity_multiple': report.is_identity_multiple,
    }


def _first_subspace(input_path: str, tol: Tolerances) -> Subspace:
    subspaces, _, _ = subspaces_from_file(load_subspace_file(input_path), tol)
    return subspaces[0]


def _family_artifacts(family: TightFamily, tol: Tolerances) -> Dict[str, Any]:
    fixed = family.shared_fixed_subspace
    return {
        'subspace': family.subspace.basis,
        'constant': family.constant,
        'achieved_spectrum': family.achieved_spectrum,
        'claimed_spectrum': family.claimed_spectrum,
        'matches_claim': family.matches_claim(tol),
        'unitary': family.unitary,
        'shared_fixed_subspace': None if fixed is None else fixed.basis,
        'minimum_member_count': minimum_member_count(family.ambient, family.subspace.dim),
        'satisfies_count_bound': family.satisfies_count_bound(),
    }


@click.group('construct', cls=FusionGroup)
def construct():
    """Constructive results: parseval, diagonal, tight-pair, tight-chain, residual-chain"""


@construct.command('parseval')
@click.option('--input', 'input_path', required=True, type=click.Path(dir_okay=False),
              help='CSV frame, one vector per row')
@click.option('--weights', 'scheme', default='shared', show_default=True,
              help=f"Weight scheme: {' | '.join(WEIGHT_SCHEMES)}")
@output_option
@handle_errors
@tolerance_options
def construct_parseval(input_path, scheme, output_dir, tol):
    """Parseval fusion frame of one-column projections from a frame"""
    construction = parseval_from_frame(read_frame_csv(input_path), scheme, tol)
    artifacts = {
        'weight_scheme': scheme,
        'permutation': construction.permutation,
        'pivots': construction.pivots,
        'multiplicities': construction.multiplicities(),
        'vectors': construction.vectors,
        'weights_squared': construction.weights,
        'duals': construction.duals,
        'perturbations': construction.perturbations,
        'parseval_vectors': construction.parseval_vectors,
    }
    emit(_write_outputs(output_dir, 'parseval', construction.frame, artifacts, tol))


@construct.command('diagonal')
@click.option('--dim', 'n', type=int, required=True, help='Ambient dimension N')
@click.option('--indices', required=True, help='Comma-separated 0-based index set K')
@click.option('--entries', required=True, help='Comma-separated diagonal entries a_i >= 1, one per index')
@click.option('--adjustable', default=None, help='Indices of K allowed above one when 2k > N')
@output_option
@handle_errors
@tolerance_options
def construct_diagonal(n, indices, entries, adjustable, output_dir, tol):
    """Projection with Gram matrix diag(a_i) on K"""
    K = parse_int_list(indices, 'indices')
    a = parse_float_list(entries, 'entries')
    chosen: Optional[Sequence[int]] = parse_int_list(adjustable, 'adjustable') if adjustable else None
    W, P = prescribed_diagonal(n, K, a, chosen, tol)
    artifacts = {
        'indices': K,
        'entries': a,
        'subspace': W.basis,
        'gram_diagonal': gram(P).diagonal(),
    }
    emit(_write_outputs(output_dir, 'diagonal', FusionFrame.from_projections([P]), artifacts, tol))


@construct.command('tight-pair')
@click.option('--input', 'input_path', type=click.Path(dir_okay=False), default=None,
              help='Subspace JSON; the first subspace is used')
@click.option('--dim', 'n', type=int, default=None, help='Ambient dimension N (without --input)')
@click.option('--rank', 'k', type=int, default=None, help='Subspace dimension k >= N/2 (without --input)')
@click.option('--seed', type=int, default=0, show_default=True, help='Seed for the random subspace')
@output_option
@handle_errors
@tolerance_options
def construct_tight_pair(input_path, n, k, seed, output_dir, tol):
    """Two projections onto W with sum of Gram matrices 2I"""
    if input_path:
        W = _first_subspace(input_path, tol)
    else:
        require(n is not None and k is not None, "give --input or both --dim and --rank")
        require(1 <= k <= n, f"need 1 <= k <= N, got N={n}, k={k}")
        W = random_subspace(make_rng(seed), n, k)
    family = tight_pair(W, tol)
    emit(_write_outputs(output_dir, 'tight-pair', family.fusion_frame(), _family_artifacts(family, tol), tol))


@construct.command('tight-chain')
@click.option('--rank', 'k', type=int, required=True, help='Subspace dimension k')
@click.option('--count', 'L', type=int, required=True, help='Number of projections L, N = kL')
@click.option('--input', 'input_path', type=click.Path(dir_okay=False), default=None,
              help='Subspace JSON; carry the chain family onto its first subspace')
@output_option
@handle_errors
@tolerance_options
def construct_tight_chain(k, L, input_path, output_dir, tol):
    """L projections onto a k-dimensional subspace of R^{kL} summing to L I"""
    if input_path:
        W = _first_subspace(input_path, tol)
        if W.dim != k:
            raise InputError(f"--rank {k} disagrees with the subspace dimension {W.dim}")
        family = tight_chain_general(W, L, tol)
    else:
        family = tight_chain(k, L, tol=tol)
    emit(_write_outputs(output_dir, 'tight-chain', family.fusion_frame(), _family_artifacts(family, tol), tol))


@construct.command('residual-chain')
@click.option('--rank', 'k', type=int, required=True, help='Subspace dimension k')
@click.option('--count', 'L', type=int, required=True, help='Chain length L')
@click.option('--remainder', 'M', type=int, required=True, help='Remainder M with N = kL + M, 1 <= M < k')
@output_option
@handle_errors
@tolerance_options
def construct_residual_chain(k, L, M, output_dir, tol):
    """L + 1 projections onto a chain subspace of R^{kL+M}; achieved spectrum reported"""
    family = residual_chain(k, L, M, tol)
    emit(_write_outputs(output_dir, 'residual-chain', family.fusion_frame(), _family_artifacts(family, tol), tol))
