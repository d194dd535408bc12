"""
analyze: build one projection per subspace and report on the fusion frame operator
"""

import click

from src.commands.common import emit, finish, handle_errors, logger, tolerance_options
from src.fusion import STRATEGIES, build_fusion_frame, structure_report
from src.models.storage import load_subspace_file, report_payload, subspaces_from_file, write_json


@click.command('analyze')
@click.option('--input', 'input_path', required=True, type=click.Path(dir_okay=False),
              help='Subspace JSON file')
@click.option('--strategy', default='orthogonal', show_default=True,
              help=f"Projection strategy: {' | '.join(STRATEGIES)}")
@click.option('--output', 'output_path', type=click.Path(dir_okay=False), default=None,
              help='Write the report here instead of stdout')
@handle_errors
@tolerance_options
def analyze(input_path, strategy, output_path, tol):
    """Assemble S = sum v_i^2 P_i^T P_i and classify it"""
    logger.info("analyze_started", input=input_path, strategy=strategy)
    data = load_subspace_file(input_path)
    subspaces, weights, nullspaces = subspaces_from_file(data, tol)
    frame = build_fusion_frame(subspaces, weights, strategy, nullspaces, tol)
    report = structure_report(frame, tol)
    payload = report_payload(report)

    if output_path:
        write_json(output_path, payload)
        emit({
            'success': report.is_frame,
            'output': output_path,
            'is_frame': report.is_frame,
            'is_tight': report.is_tight,
            'is_diagonal': report.is_diagonal,
        })
    else:
        emit({'success': report.is_frame, 'report': payload})
    logger.info("analyze_finished", is_frame=report.is_frame, lower=report.lower, upper=report.upper)
    finish(report.is_frame)
