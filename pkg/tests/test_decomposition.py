import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import sparse
from scipy.sparse.linalg import ArpackNoConvergence

from framework.errors import ContractViolation, ConvergenceError, IndexFormatError
from models.matrix import RowMap
from services import decomposition
from services.decomposition import load_space, project, save_space, truncated_svd
from services.similarity import cosine


def random_sparse(seed, rows, cols, density=0.2):
    return sparse.random(rows, cols, density=density, format="csr", random_state=np.random.default_rng(seed))


def row_map_for(rows):
    keys = []
    for i in range(rows // 2):
        keys.extend([(f"a{i}", f"b{i}"), (f"b{i}", f"a{i}")])
    return RowMap(keys=keys)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=30), st.integers(min_value=2, max_value=100),
       st.integers(min_value=1, max_value=15), st.integers(0, 2 ** 16))
def test_projection_preserves_reconstruction_cosines(half_rows, cols, k, seed):
    values = random_sparse(seed, 2 * half_rows, cols, density=0.3)
    result = truncated_svd(values, k)
    space = project(result, row_map_for(2 * half_rows))
    reconstruction = result.reconstruct()
    norms = np.linalg.norm(reconstruction, axis=1)
    scale = norms.max() if norms.size else 0.0
    usable = [i for i in range(len(norms)) if norms[i] > 1e-6 * scale]
    for i in usable:
        for j in usable:
            assert abs(cosine(space.vectors[i], space.vectors[j]) - cosine(reconstruction[i], reconstruction[j])) <= 1e-10


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=1, max_value=50), st.integers(min_value=1, max_value=50), st.integers(0, 2 ** 16))
def test_singular_values_match_dense_oracle(rows, cols, seed):
    dense = np.random.default_rng(seed).standard_normal((rows, cols))
    result = truncated_svd(dense, k=min(rows, cols))
    oracle = np.linalg.svd(dense, compute_uv=False)
    np.testing.assert_allclose(result.singular_values, oracle[:result.k], rtol=0, atol=1e-8)

    errors = [np.linalg.norm(dense - truncated_svd(dense, k).reconstruct()) for k in range(1, min(rows, cols) + 1)]
    assert all(later <= earlier + 1e-9 for earlier, later in zip(errors, errors[1:]))


def test_effective_k_is_clamped_to_rank():
    low_rank = np.outer(np.arange(1.0, 7.0), np.arange(1.0, 5.0)) + np.outer(np.ones(6), [1.0, 0.0, 0.0, 2.0])
    result = truncated_svd(low_rank, k=300)
    assert result.requested_k == 300
    assert result.k == 2
    np.testing.assert_allclose(result.reconstruct(), low_rank, atol=1e-10)


def test_lanczos_path_agrees_with_dense():
    values = random_sparse(3, 80, 60, density=0.15)
    dense = truncated_svd(values, k=5)
    iterative = truncated_svd(values, k=5, dense_limit=1)
    np.testing.assert_allclose(iterative.singular_values, dense.singular_values, rtol=0, atol=1e-8)
    for j in range(5):
        assert abs(cosine(iterative.U[:, j], dense.U[:, j])) == pytest.approx(1.0, abs=1e-6)


def test_lanczos_no_convergence_reports_the_converged_count(monkeypatch):
    def stalled(*args, **kwargs):
        raise ArpackNoConvergence("stalled", np.zeros(2), np.zeros((60, 2)))

    monkeypatch.setattr(decomposition, "svds", stalled)
    with pytest.raises(ConvergenceError, match="converged on 2 of 5") as excinfo:
        truncated_svd(random_sparse(3, 80, 60, density=0.15), k=5, dense_limit=1)
    assert excinfo.value.achieved_tolerance is None
    assert "achieved" not in excinfo.value.detail


def test_signs_are_fixed_and_columns_orthonormal():
    result = truncated_svd(random_sparse(11, 20, 15, density=0.4), k=6)
    for j in range(result.k):
        column = result.U[:, j]
        assert column[np.argmax(np.abs(column))] > 0
    np.testing.assert_allclose(result.U.T @ result.U, np.eye(result.k), atol=1e-10)
    np.testing.assert_allclose(result.V.T @ result.V, np.eye(result.k), atol=1e-10)
    assert np.all(np.diff(result.singular_values) <= 0)


@pytest.mark.parametrize("k", [0, -3])
def test_k_must_be_positive(k):
    with pytest.raises(ContractViolation):
        truncated_svd(np.eye(3), k)


def test_empty_matrix_is_rejected():
    with pytest.raises(ContractViolation):
        truncated_svd(sparse.csr_matrix((0, 4)), 2)


def test_space_round_trip_is_byte_stable(tmp_path):
    values = random_sparse(5, 10, 12, density=0.5)
    result = truncated_svd(values, 4)
    space = project(result, row_map_for(10), dropped=frozenset({("x", "y"), ("y", "x")}))
    first = save_space(space, tmp_path / "a.lraprj")
    loaded = load_space(tmp_path / "a.lraprj")
    np.testing.assert_array_equal(loaded.vectors, space.vectors)
    assert loaded.row_map == space.row_map
    assert loaded.dropped == space.dropped
    assert loaded.contains(("x", "y")) and loaded.vector(("x", "y")) is None
    assert save_space(project(truncated_svd(values, 4), row_map_for(10), space.dropped), tmp_path / "b.lraprj") == first


def test_load_space_rejects_bad_header(tmp_path):
    path = tmp_path / "broken.lraprj"
    path.write_bytes(b"LRAIDX1\nnot a projection")
    with pytest.raises(IndexFormatError):
        load_space(path)
