import numpy as np
import pytest

from snns import qmath
from snns.errors import (
    BadSubsystemError,
    DimMismatchError,
    InvariantViolationError,
    NegativeEigenvalueError,
    NonFiniteError,
)
from snns.qmath import DensityMatrix

KET0 = np.diag([1.0, 0.0])
KET1 = np.diag([0.0, 1.0])
MIXED = np.eye(2) / 2


def bell():
    v = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return DensityMatrix.from_array(np.outer(v, v), (2, 2))


def random_hermitian(rng, n, scale=1.0):
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return scale * (g + g.conj().T) / 2


# eigendecomposition

def test_eig_identity():
    assert np.abs(qmath.hermitian_eig(np.eye(2)).eigenvalues - [1, 1]).max() < 1e-12


def test_eig_diagonal_sorted():
    assert np.abs(qmath.hermitian_eig(np.diag([3.0, -1.0])).eigenvalues - [-1, 3]).max() < 1e-12


def test_eig_pauli_x():
    spec = qmath.hermitian_eig(np.array([[0, 1], [1, 0]]))
    assert np.abs(spec.eigenvalues - [-1, 1]).max() < 1e-12


def test_eig_reconstruction_and_unitarity(rng):
    for n in (2, 5, 9, 25):
        h = random_hermitian(rng, n, scale=100.0)
        spec = qmath.hermitian_eig(h)
        v = spec.eigenvectors
        assert np.linalg.norm(spec.reconstruct() - h) <= 1e-9 * (1 + np.linalg.norm(h))
        assert np.abs(v.conj().T @ v - np.eye(n)).max() < 1e-10


def test_eig_rejects_nonfinite():
    with pytest.raises(NonFiniteError):
        qmath.hermitian_eig(np.array([[np.nan, 0], [0, 1]]))


def test_eig_rejects_non_square():
    with pytest.raises(DimMismatchError):
        qmath.hermitian_eig(np.ones((2, 3)))


# matrix functions

def test_sqrt_examples():
    assert np.abs(qmath.matrix_function(np.eye(3), "sqrt") - np.eye(3)).max() < 1e-12
    assert np.abs(qmath.matrix_function(np.diag([4.0, 9.0]), "sqrt") - np.diag([2, 3])).max() < 1e-12


def test_log2_half():
    assert np.abs(qmath.matrix_function(MIXED, "log2") + np.eye(2)).max() < 1e-12


def test_ln_and_sqrt_consistent(rng):
    rho = qmath.random_density_matrix(4, rng)
    r = qmath.matrix_function(rho, "sqrt")
    assert np.abs(r @ r - rho).max() < 1e-12
    ln = qmath.matrix_function(rho, "ln")
    l2 = qmath.matrix_function(rho, "log2")
    assert np.abs(ln / np.log(2) - l2).max() < 1e-10


def test_matrix_function_negative_eigenvalue():
    with pytest.raises(NegativeEigenvalueError):
        qmath.matrix_function(np.diag([1.0, -0.1]), "sqrt")


def test_matrix_function_unknown_tag():
    with pytest.raises(ValueError):
        qmath.matrix_function(np.eye(2), "exp")


# fidelity, trace distance, relative entropy

def test_fidelity_examples(rng):
    rho = qmath.random_density_matrix(3, rng)
    assert abs(qmath.bures_fidelity(rho, rho) - 1) < 1e-9
    assert abs(qmath.bures_fidelity(KET0, KET1)) < 1e-12
    assert abs(qmath.bures_fidelity(KET0, MIXED) - 1 / np.sqrt(2)) < 1e-12


def test_fidelity_symmetric(rng):
    a, b = qmath.random_density_matrix(4, rng), qmath.random_density_matrix(4, rng)
    assert abs(qmath.bures_fidelity(a, b) - qmath.bures_fidelity(b, a)) < 1e-10


def test_trace_distance_examples(rng):
    rho = qmath.random_density_matrix(3, rng)
    assert qmath.trace_distance(rho, rho) < 1e-12
    assert abs(qmath.trace_distance(KET0, KET1) - 1) < 1e-12
    assert abs(qmath.trace_distance(KET0, MIXED) - 0.5) < 1e-12


def test_dims_mismatch():
    a = DensityMatrix.from_array(np.eye(4) / 4, (2, 2))
    b = DensityMatrix.from_array(np.eye(4) / 4, (4,))
    with pytest.raises(DimMismatchError):
        qmath.trace_distance(a, b)
    with pytest.raises(DimMismatchError):
        qmath.bures_fidelity(np.eye(2) / 2, np.eye(3) / 3)


def test_qre_examples(rng):
    rho = qmath.random_density_matrix(3, rng)
    assert qmath.qre(rho, rho) < 1e-10
    assert abs(qmath.qre(KET0, MIXED) - 1) < 1e-12
    assert qmath.qre(KET0, KET1) == np.inf


def test_qre_against_classical_formula():
    p, q = np.array([0.2, 0.8]), np.array([0.6, 0.4])
    expected = float(np.sum(p * np.log2(p / q)))
    assert abs(qmath.qre(np.diag(p), np.diag(q)) - expected) < 1e-12


def test_fuchs_van_de_graaf(rng):
    for _ in range(100):
        n = int(rng.integers(2, 6))
        a = qmath.random_density_matrix(n, rng, rank=int(rng.integers(1, n + 1)))
        b = qmath.random_density_matrix(n, rng, rank=int(rng.integers(1, n + 1)))
        f = qmath.bures_fidelity(a, b)
        t = qmath.trace_distance(a, b)
        assert 1 - f <= t + 1e-9
        assert t <= np.sqrt(max(1 - f * f, 0.0)) + 1e-8


# partial transpose and trace

def test_pt_product_is_ppt(rng):
    a, b = qmath.random_density_matrix(2, rng), qmath.random_density_matrix(3, rng)
    rho = np.kron(a, b)
    assert qmath.min_pt_eigenvalue(rho, 0, (2, 3)) >= -1e-12
    assert qmath.is_ppt(rho, (2, 3))


def test_pt_bell_spectrum():
    assert abs(qmath.min_pt_eigenvalue(bell(), 0) + 0.5) < 1e-12
    w = np.linalg.eigvalsh(qmath.partial_transpose(bell(), 1))
    assert np.abs(w - [-0.5, 0.5, 0.5, 0.5]).max() < 1e-12
    assert not qmath.is_ppt(bell())


def test_pt_involution(rng):
    rho = qmath.random_density_matrix(6, rng)
    twice = qmath.partial_transpose(qmath.partial_transpose(rho, 1, (2, 3)), 1, (2, 3))
    assert np.abs(twice - rho).max() < 1e-15


def test_pt_errors():
    with pytest.raises(BadSubsystemError):
        qmath.partial_transpose(bell(), 2)
    with pytest.raises(BadSubsystemError):
        qmath.partial_transpose(np.eye(4) / 4, 0)
    with pytest.raises(DimMismatchError):
        qmath.partial_transpose(np.eye(4) / 4, 0, (2, 3))


def test_partial_trace_bell():
    assert np.abs(qmath.partial_trace(bell(), [0]) - MIXED).max() < 1e-12


# elementwise helpers

def test_kron_hadamard_vectorise():
    assert np.abs(qmath.hadamard(np.eye(3), np.eye(3)) - np.eye(3)).max() == 0
    assert np.abs(qmath.kron(np.eye(2), np.eye(2)) - np.eye(4)).max() == 0
    m = np.array([[1, 2], [3, 4]])
    assert list(qmath.vectorise(m)) == [1, 2, 3, 4]
    assert np.abs(qmath.devectorise(qmath.vectorise(m), 2) - m).max() == 0
    with pytest.raises(DimMismatchError):
        qmath.devectorise(np.ones(5), 2)


# DensityMatrix validation

def test_validate_invariants():
    with pytest.raises(InvariantViolationError) as e:
        DensityMatrix.from_array(np.eye(2) / 4)
    assert e.value.invariant == "trace"
    with pytest.raises(InvariantViolationError) as e:
        DensityMatrix.from_array(np.array([[0.5, 1e-3], [0, 0.5]]))
    assert e.value.invariant == "hermiticity"
    with pytest.raises(InvariantViolationError) as e:
        DensityMatrix.from_array(np.diag([1.5, -0.5]))
    assert e.value.invariant == "positivity"


def test_project_to_state_records_clip():
    st, clipped = qmath.project_to_state(np.diag([1.1, -0.1]))
    assert abs(clipped - 0.1) < 1e-12
    assert np.abs(st - np.diag([1.0, 0.0])).max() < 1e-12
