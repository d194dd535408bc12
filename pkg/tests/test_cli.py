import numpy as np
import orjson
import pytest
from click.testing import CliRunner

from src.main import cli
from src.models.storage import load_subspace_file, subspaces_from_file
from src.projections import select_pivot_rows

S = 1.0 / np.sqrt(2.0)
TWO_PLANES = {
    'ambient_dim': 3,
    'subspaces': [
        {'basis': [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]], 'nullspace': [[0.0], [1.0], [1.0]]},
        {'basis': [[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]], 'nullspace': [[1.0], [0.0], [0.0]]},
    ],
}
OBLIQUE_PAIR = {
    'ambient_dim': 3,
    'projections': [
        {'matrix': [[1.0, 0.0, 0.0], [0.0, 1.0, -1.0], [0.0, 0.0, 0.0]], 'weight': 1.0},
        {'matrix': [[0.0, -1.0, -1.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]], 'weight': 1.0},
    ],
}


def run(*args):
    # Errors are logged to stderr; keep stdout pure JSON
    return CliRunner().invoke(cli, ['--log-level', 'CRITICAL', *[str(a) for a in args]])


def output_of(result):
    return orjson.loads(result.output)


def write(path, payload):
    path.write_bytes(orjson.dumps(payload, option=orjson.OPT_SERIALIZE_NUMPY))
    return path


def test_analyze_orthogonal_operator_is_dense(tmp_path):
    path = write(tmp_path / 'planes.json', TWO_PLANES)
    result = run('analyze', '--input', path)
    assert result.exit_code == 0
    report = output_of(result)['report']
    assert report['nnz'] == 9
    assert report['is_frame']
    assert report['block_pattern'] == [[0, 1, 2]]


def test_analyze_oblique_operator_is_diagonal(tmp_path):
    path = write(tmp_path / 'planes.json', TWO_PLANES)
    result = run('analyze', '--input', path, '--strategy', 'oblique')
    assert result.exit_code == 0
    report = output_of(result)['report']
    np.testing.assert_allclose(report['operator'], np.diag([1.0, 3.0, 3.0]), atol=1e-12)
    assert report['is_diagonal']
    assert not report['is_tight']
    assert report['lower_bound'] == pytest.approx(1.0)
    assert report['upper_bound'] == pytest.approx(3.0)
    assert report['block_pattern'] == [[0], [1], [2]]
    assert len(report['per_projection']) == 2


def test_analyze_writes_report_file(tmp_path):
    path = write(tmp_path / 'planes.json', TWO_PLANES)
    target = tmp_path / 'out' / 'report.json'
    result = run('analyze', '--input', path, '--strategy', 'oblique', '--output', target)
    assert result.exit_code == 0
    assert output_of(result)['output'] == str(target)
    report = orjson.loads(target.read_bytes())
    assert report['is_frame']
    assert report['lower_bound'] <= report['upper_bound']


def test_analyze_exit_codes(tmp_path):
    single = write(tmp_path / 'single.json', {'ambient_dim': 3, 'subspaces': [TWO_PLANES['subspaces'][0]]})
    result = run('analyze', '--input', single)
    assert result.exit_code == 2
    assert output_of(result)['success'] is False

    empty = write(tmp_path / 'empty.json', {'ambient_dim': 3, 'subspaces': []})
    result = run('analyze', '--input', empty)
    assert result.exit_code == 1
    assert output_of(result)['error_type'] == 'ParseError'

    path = write(tmp_path / 'planes.json', TWO_PLANES)
    result = run('analyze', '--input', path, '--strategy', 'random')
    assert result.exit_code == 1
    assert output_of(result)['error_type'] == 'StrategyError'

    broken = tmp_path / 'broken.json'
    broken.write_text('{"ambient_dim": 3,')
    assert run('analyze', '--input', broken).exit_code == 1
    assert run('analyze', '--input', tmp_path / 'missing.json').exit_code == 1


def test_usage_errors_exit_with_input_code(tmp_path):
    assert run('analyze').exit_code == 1
    assert run('transform').exit_code == 1
    assert run('construct', 'diagonal', '--dim', 'four').exit_code == 1
    path = write(tmp_path / 'planes.json', TWO_PLANES)
    result = run('analyze', '--input', path, '--tol-eq=-1')
    assert result.exit_code == 1
    assert output_of(result)['error_type'] == 'ParseError'


def test_version():
    result = CliRunner().invoke(cli, ['--version'])
    assert result.exit_code == 0
    assert '1.0.0' in result.output


def test_verify_targets(tmp_path):
    path = write(tmp_path / 'pair.json', OBLIQUE_PAIR)
    result = run('verify', '--input', path, '--target', 'diagonal')
    assert result.exit_code == 0
    data = output_of(result)
    assert data['success'] and data['target'] == 'diagonal'
    assert data['report']['nnz'] == 3

    result = run('verify', '--input', path, '--target', 'identity')
    assert result.exit_code == 2
    assert output_of(result)['success'] is False

    assert run('verify', '--input', path, '--target', 'sparse').exit_code == 1


def test_verify_reports_the_offending_matrix(tmp_path):
    payload = {
        'ambient_dim': 2,
        'projections': [{'matrix': [[1.0, 0.0], [0.0, 0.0]]}, {'matrix': [[1.0, 1.0], [0.0, 2.0]]}],
    }
    result = run('verify', '--input', write(tmp_path / 'bad.json', payload), '--target', 'frame')
    assert result.exit_code == 1
    data = output_of(result)
    assert data['error_type'] == 'NotAProjectionError'
    assert data['index'] == 1
    assert data['residual'] > 0


def test_verify_rejects_wrong_shapes(tmp_path):
    payload = {'ambient_dim': 3, 'projections': [{'matrix': [[1.0, 0.0], [0.0, 1.0]]}]}
    result = run('verify', '--input', write(tmp_path / 'bad.json', payload), '--target', 'frame')
    assert result.exit_code == 1


def test_tight_pair_round_trips_through_verify(tmp_path):
    plane = {'ambient_dim': 3, 'subspaces': [{'basis': [[1.0, 0.0], [0.0, S], [0.0, S]]}]}
    out = tmp_path / 'pair'
    result = run('construct', 'tight-pair', '--input', write(tmp_path / 'plane.json', plane), '--output', out)
    assert result.exit_code == 0
    data = output_of(result)
    assert data['members'] == 2
    assert data['is_identity_multiple']
    assert data['tight_constant'] == pytest.approx(2.0)

    artifacts = orjson.loads((out / 'artifacts.json').read_bytes())
    assert artifacts['kind'] == 'tight-pair'
    assert artifacts['minimum_member_count'] == 2
    assert artifacts['satisfies_count_bound']
    report = orjson.loads((out / 'report.json').read_bytes())
    np.testing.assert_allclose(report['operator'], 2.0 * np.eye(3), atol=1e-12)

    result = run('verify', '--input', out / 'projections.json', '--target', 'identity')
    assert result.exit_code == 0
    assert output_of(result)['report']['tight_constant'] == pytest.approx(2.0)


def test_tight_pair_from_random_subspace(tmp_path):
    result = run('construct', 'tight-pair', '--dim', 5, '--rank', 3, '--seed', 4, '--output', tmp_path / 'out')
    assert result.exit_code == 0
    assert output_of(result)['tight_constant'] == pytest.approx(2.0)

    result = run('construct', 'tight-pair', '--dim', 5, '--rank', 2, '--output', tmp_path / 'small')
    assert result.exit_code == 1
    assert output_of(result)['error_type'] == 'DimensionTooSmallError'
    assert run('construct', 'tight-pair', '--output', tmp_path / 'none').exit_code == 1


def test_parseval_from_generated_frame(tmp_path):
    csv = tmp_path / 'frame.csv'
    result = run('generate', 'frame', '--dim', 3, '--count', 7, '--seed', 1, '--output', csv)
    assert result.exit_code == 0
    assert output_of(result)['shape'] == [7, 3]

    out = tmp_path / 'parseval'
    result = run('construct', 'parseval', '--input', csv, '--output', out)
    assert result.exit_code == 0
    data = output_of(result)
    assert data['members'] == 7
    assert data['is_identity_multiple']
    assert data['tight_constant'] == pytest.approx(1.0)

    artifacts = orjson.loads((out / 'artifacts.json').read_bytes())
    assert artifacts['weight_scheme'] == 'shared'
    assert len(artifacts['weights_squared']) == 7
    assert sorted(artifacts['permutation']) == list(range(7))
    assert run('verify', '--input', out / 'projections.json', '--target', 'identity').exit_code == 0


def test_parseval_rejects_bad_frames(tmp_path):
    csv = tmp_path / 'line.csv'
    csv.write_text('1,0\n2,0\n')
    result = run('construct', 'parseval', '--input', csv, '--output', tmp_path / 'out')
    assert result.exit_code == 1
    assert output_of(result)['error_type'] == 'NotSpanningError'

    text = tmp_path / 'text.csv'
    text.write_text('1,a\n0,1\n')
    assert run('construct', 'parseval', '--input', text, '--output', tmp_path / 'out').exit_code == 1


def test_construct_diagonal(tmp_path):
    out = tmp_path / 'diag'
    result = run('construct', 'diagonal', '--dim', 4, '--indices', '0,1', '--entries', '2,5', '--output', out)
    assert result.exit_code == 0
    artifacts = orjson.loads((out / 'artifacts.json').read_bytes())
    np.testing.assert_allclose(artifacts['gram_diagonal'], [2.0, 5.0, 0.0, 0.0], atol=1e-12)
    report = orjson.loads((out / 'report.json').read_bytes())
    assert report['is_diagonal']

    result = run('construct', 'diagonal', '--dim', 4, '--indices', '0,1', '--entries', '0.5,2', '--output', out)
    assert result.exit_code == 1
    assert output_of(result)['error_type'] == 'BadEntryError'

    result = run('construct', 'diagonal', '--dim', 5, '--indices', '0,1,2,3', '--entries', '1,4,1,1',
                 '--adjustable', '1', '--output', tmp_path / 'adjusted')
    assert result.exit_code == 0
    assert run('construct', 'diagonal', '--dim', 4, '--indices', '0,x', '--entries', '2,2',
               '--output', out).exit_code == 1


def test_construct_chains(tmp_path):
    result = run('construct', 'tight-chain', '--rank', 2, '--count', 3, '--output', tmp_path / 'chain')
    assert result.exit_code == 0
    data = output_of(result)
    assert data['members'] == 3
    assert data['tight_constant'] == pytest.approx(3.0)

    result = run('construct', 'residual-chain', '--rank', 2, '--count', 1, '--remainder', 1,
                 '--output', tmp_path / 'residual')
    assert result.exit_code == 0
    assert output_of(result)['tight_constant'] == pytest.approx(2.0)
    artifacts = orjson.loads((tmp_path / 'residual' / 'artifacts.json').read_bytes())
    assert artifacts['matches_claim'] is False
    np.testing.assert_allclose(artifacts['achieved_spectrum'], [2.0, 2.0, 2.0], atol=1e-12)

    result = run('construct', 'residual-chain', '--rank', 2, '--count', 1, '--remainder', 0,
                 '--output', tmp_path / 'bad')
    assert result.exit_code == 1
    assert output_of(result)['error_type'] == 'BadFactorizationError'


def test_tight_chain_on_generated_subspace(tmp_path):
    path = tmp_path / 'subspaces.json'
    result = run('generate', 'subspaces', '--dim', 6, '--count', 1, '--rank', 2, '--seed', 3, '--output', path)
    assert result.exit_code == 0

    result = run('construct', 'tight-chain', '--rank', 2, '--count', 3, '--input', path, '--output', tmp_path / 'c')
    assert result.exit_code == 0
    assert output_of(result)['tight_constant'] == pytest.approx(3.0)

    result = run('construct', 'tight-chain', '--rank', 3, '--count', 2, '--input', path, '--output', tmp_path / 'd')
    assert result.exit_code == 1


def test_generated_subspaces_analyze_by_strategy(tmp_path):
    path = tmp_path / 'subspaces.json'
    assert run('generate', 'subspaces', '--dim', 4, '--count', 3, '--rank', 2, '--seed', 0,
               '--output', path).exit_code == 0
    data = load_subspace_file(path)
    assert data.ambient_dim == 4
    assert len(data.subspaces) == 3

    # no pivot set touches coordinate 1, so every sparse projection kills e_1
    subspaces, _, _ = subspaces_from_file(data)
    covered = set().union(*(select_pivot_rows(W) for W in subspaces))
    assert 1 not in covered

    result = run('analyze', '--input', path, '--strategy', 'orthogonal')
    assert result.exit_code == 0
    report = output_of(result)['report']
    assert report['is_frame']
    assert report['lower_bound'] > 0.1

    for strategy in ('block-sparse', 'triangular'):
        result = run('analyze', '--input', path, '--strategy', strategy)
        assert result.exit_code == 2
        report = output_of(result)['report']
        assert not report['is_frame']
        assert report['lower_bound'] == pytest.approx(0.0, abs=1e-9)

    assert run('generate', 'frame', '--dim', 4, '--count', 2, '--output', tmp_path / 'f.csv').exit_code == 1


def test_analyze_accepts_empty_nullspace_for_full_subspace(tmp_path):
    path = write(tmp_path / 'full.json', {
        'ambient_dim': 3,
        'subspaces': [
            {'basis': np.eye(3).tolist(), 'nullspace': [[], [], []]},
            {'basis': [[1.0], [0.0], [0.0]], 'nullspace': [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]},
        ],
    })
    result = run('analyze', '--input', path, '--strategy', 'oblique')
    assert result.exit_code == 0
    np.testing.assert_allclose(output_of(result)['report']['operator'], np.diag([2.0, 1.0, 1.0]), atol=1e-12)


def test_tol_rank_reaches_subspace_validation(tmp_path):
    path = write(tmp_path / 'thin.json', {
        'ambient_dim': 3,
        'subspaces': [{'basis': [[1.0, 0.0], [0.0, 1e-12], [0.0, 0.0]]}],
    })
    result = run('analyze', '--input', path)
    assert result.exit_code == 1
    assert output_of(result)['error_type'] == 'RankDeficientError'

    result = run('analyze', '--input', path, '--tol-rank', '1e-14')
    assert result.exit_code == 2
    report = output_of(result)['report']
    assert not report['is_frame']
    np.testing.assert_allclose(report['operator'], np.diag([1.0, 1.0, 0.0]), atol=1e-9)
