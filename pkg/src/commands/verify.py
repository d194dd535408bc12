"""
verify: check explicit projection matrices against a structural target
"""

import click
import numpy as np

from src.commands.common import emit, finish, handle_errors, logger, tolerance_options
from src.errors import InputError
from src.fusion import FusionFrame, OperatorReport, structure_report
from src.models.storage import load_projection_file, report_payload
from src.projections import ObliqueProjection

TARGETS = ('frame', 'tight', 'diagonal', 'identity')


def target_met(report: OperatorReport, target: str) -> bool:
    """identity means a positive multiple of the identity"""
    if target == 'frame':
        return report.is_frame
    if target == 'tight':
        return report.is_tight
    if target == 'diagonal':
        return report.is_diagonal
    return report.is_identity_multiple


@click.command('verify')
@click.option('--input', 'input_path', required=True, type=click.Path(dir_okay=False),
              help='Projection JSON file')
@click.option('--target', required=True, help=f"One of {' | '.join(TARGETS)}")
@handle_errors
@tolerance_options
def verify(input_path, target, tol):
    """Validate idempotency of every matrix, assemble S and test the target"""
    if target not in TARGETS:
        raise InputError(f"unknown target '{target}', expected one of {', '.join(TARGETS)}")
    data = load_projection_file(input_path)
    projections = [ObliqueProjection.from_matrix(np.array(entry.matrix), tol, index=i)
                   for i, entry in enumerate(data.projections)]
    frame = FusionFrame.from_projections(projections, [entry.weight for entry in data.projections])
    report = structure_report(frame, tol)
    passed = target_met(report, target)

    emit({'success': passed, 'target': target, 'report': report_payload(report)})
    logger.info("verify_finished", target=target, passed=passed)
    finish(passed)
