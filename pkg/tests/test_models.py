import numpy as np
import pytest
from pydantic import ValidationError

from src.errors import ParseError
from src.fusion import build_fusion_frame, structure_report
from src.linalg import Subspace, same_span
from src.models.schemas import ProjectionFile, ReportFile, SubspaceFile
from src.models.storage import (
    load_projection_file,
    load_subspace_file,
    read_frame_csv,
    report_payload,
    save_projection_file,
    save_subspace_file,
    subspaces_from_file,
    write_frame_csv,
    write_json,
)
from src.projections import oblique


def test_subspace_file_shapes():
    data = SubspaceFile.model_validate({'ambient_dim': 2, 'subspaces': [{'basis': [[1.0], [0.0]]}]})
    assert data.subspaces[0].weight == 1.0
    with pytest.raises(ValidationError):
        SubspaceFile.model_validate({'ambient_dim': 2, 'subspaces': [{'basis': [[1.0], [0.0, 1.0]]}]})
    with pytest.raises(ValidationError):
        SubspaceFile.model_validate({'ambient_dim': 3, 'subspaces': [{'basis': [[1.0], [0.0]]}]})
    with pytest.raises(ValidationError):
        SubspaceFile.model_validate({'ambient_dim': 2, 'subspaces': [{'basis': [[1.0], [0.0]], 'weight': 0.0}]})
    with pytest.raises(ValidationError):
        SubspaceFile.model_validate({'ambient_dim': 2,
                                     'subspaces': [{'basis': [[1.0], [0.0]], 'nullspace': [[1.0, 0.0], [0.0, 1.0]]}]})


def test_projection_file_needs_square_matrices():
    ProjectionFile.model_validate({'ambient_dim': 1, 'projections': [{'matrix': [[1.0]]}]})
    with pytest.raises(ValidationError):
        ProjectionFile.model_validate({'ambient_dim': 2, 'projections': [{'matrix': [[1.0, 0.0]]}]})
    with pytest.raises(ValidationError):
        ProjectionFile.model_validate({'ambient_dim': 1, 'projections': []})


def test_report_file_consistency_rules():
    base = {
        'operator': [[2.0, 0.0], [0.0, 2.0]],
        'lower_bound': 2.0,
        'upper_bound': 2.0,
        'spectrum': [2.0, 2.0],
        'is_frame': True,
        'is_tight': True,
        'tight_constant': 2.0,
        'is_diagonal': True,
        'is_identity_multiple': True,
        'nnz': 2,
        'block_pattern': [[0], [1]],
    }
    ReportFile.model_validate(base)
    with pytest.raises(ValidationError):
        ReportFile.model_validate({**base, 'tight_constant': None})
    with pytest.raises(ValidationError):
        ReportFile.model_validate({**base, 'is_diagonal': False})
    with pytest.raises(ValidationError):
        ReportFile.model_validate({**base, 'lower_bound': 3.0})
    with pytest.raises(ValidationError):
        ReportFile.model_validate({**base, 'comment': 'extra'})


def test_subspace_file_preserves_bases_and_weights(tmp_path, plane_sum0, example_plane):
    path = save_subspace_file(tmp_path / 'subspaces.json', [plane_sum0, example_plane], [0.5, 2.0])
    subspaces, weights, nullspaces = subspaces_from_file(load_subspace_file(path))
    np.testing.assert_array_equal(subspaces[1].basis, example_plane.basis)
    assert same_span(subspaces[0], plane_sum0)
    assert weights == [0.5, 2.0]
    assert nullspaces == [None, None]


def test_projection_file_matrices_are_exact(tmp_path, plane_sum0, plane_sum0_nullspace, rng):
    P = oblique(plane_sum0, plane_sum0_nullspace)
    Q = oblique(plane_sum0, Subspace(rng.standard_normal((3, 1))))
    path = save_projection_file(tmp_path / 'p.json', [P, Q], [1.0, 0.25])
    data = load_projection_file(path)
    np.testing.assert_array_equal(np.array(data.projections[1].matrix), Q.matrix)
    assert data.projections[1].weight == 0.25


def test_loaders_raise_parse_errors(tmp_path):
    with pytest.raises(ParseError):
        load_subspace_file(tmp_path / 'missing.json')
    bad = tmp_path / 'bad.json'
    bad.write_text('[1, 2')
    with pytest.raises(ParseError):
        load_projection_file(bad)
    wrong = write_json(tmp_path / 'wrong.json', {'ambient_dim': 2, 'projections': [{'matrix': [[1.0]]}]})
    with pytest.raises(ParseError, match='projections'):
        load_projection_file(wrong)


def test_frame_csv(tmp_path, rng):
    X = rng.standard_normal((5, 3))
    path = write_frame_csv(tmp_path / 'frames' / 'x.csv', X)
    np.testing.assert_array_equal(read_frame_csv(path), X)

    ragged = tmp_path / 'ragged.csv'
    ragged.write_text('1,2,3\n4,5\n')
    with pytest.raises(ParseError):
        read_frame_csv(ragged)
    empty = tmp_path / 'empty.csv'
    empty.write_text('')
    with pytest.raises(ParseError):
        read_frame_csv(empty)


def test_report_payload_is_schema_checked(plane_z0, plane_sum0):
    report = structure_report(build_fusion_frame([plane_z0, plane_sum0]))
    payload = report_payload(report)
    assert payload['nnz'] == 9
    assert ReportFile.model_validate(payload).is_frame


def test_empty_nullspace_means_none():
    data = SubspaceFile.model_validate({
        'ambient_dim': 3,
        'subspaces': [{'basis': np.eye(3).tolist(), 'nullspace': [[], [], []]}],
    })
    subspaces, _, nullspaces = subspaces_from_file(data)
    assert subspaces[0].dim == 3
    assert nullspaces == [None]
    frame = build_fusion_frame(subspaces, strategy='oblique', nullspaces=nullspaces)
    np.testing.assert_array_equal(frame.projections[0].matrix, np.eye(3))
