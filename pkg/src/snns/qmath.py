"""Dense linear algebra and quantum-information primitives.

All functions accept either raw square ``numpy`` arrays or :class:`DensityMatrix`
instances and never mutate their inputs. Logarithms are base 2 unless the
``ln`` tag is requested.
"""

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    BadSubsystemError,
    DimMismatchError,
    InvariantViolationError,
    NegativeEigenvalueError,
    NoConvergenceError,
    NonFiniteError,
)

LOG_FLOOR = 1e-14
SUPPORT_THRESHOLD = 1e-10
SUPPORT_WEIGHT = 1e-8
NEG_EIG_TOL = 1e-9


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Trace-one Hermitian PSD matrix over a register of qudits.

    ``dims`` lists the local dimension of every qudit, leftmost qudit most
    significant in the computational basis ordering.
    """

    mat: np.ndarray
    dims: tuple

    @classmethod
    def from_array(cls, mat, dims=None, check=True, tol_trace=1e-10, tol_eig=1e-9):
        mat = np.array(mat, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise DimMismatchError(f"density matrix must be square, got {mat.shape}")
        if dims is None:
            dims = (mat.shape[0],)
        dims = tuple(int(d) for d in dims)
        if int(np.prod(dims)) != mat.shape[0]:
            raise DimMismatchError(f"dims {dims} do not multiply to {mat.shape[0]}")
        dm = cls(mat, dims)
        if check:
            dm.validate(tol_trace=tol_trace, tol_eig=tol_eig)
        return dm

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def validate(self, tol_trace=1e-10, tol_eig=1e-9, tol_herm=1e-10):
        """Raise :class:`InvariantViolationError` naming the first broken invariant."""
        m = self.mat
        if not np.all(np.isfinite(m)):
            raise InvariantViolationError("finite", "matrix has NaN/Inf entries")
        dev = hermiticity_deviation(m)
        scale = max(np.linalg.norm(m), 1.0)
        if dev > tol_herm * scale:
            raise InvariantViolationError("hermiticity", f"||H - H^dag|| = {dev:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > tol_trace:
            raise InvariantViolationError("trace", f"trace = {tr.real:.12g}")
        lo = np.linalg.eigvalsh(hermitise(m))[0]
        if lo < -tol_eig:
            raise InvariantViolationError("positivity", f"min eigenvalue = {lo:.3e}")
        return self


def as_matrix(x) -> np.ndarray:
    if isinstance(x, DensityMatrix):
        return x.mat
    return np.asarray(x, dtype=complex)


def dims_of(x, default=None):
    if isinstance(x, DensityMatrix):
        return x.dims
    return default


def hermitise(h):
    h = as_matrix(h)
    return 0.5 * (h + h.conj().T)


def hermiticity_deviation(h) -> float:
    h = as_matrix(h)
    return float(np.linalg.norm(h - h.conj().T))


def _check_finite(h):
    if not np.all(np.isfinite(h)):
        raise NonFiniteError("matrix contains NaN or Inf entries")


def hermitian_eig(h) -> Spectrum:
    """Eigen-decomposition of the Hermitian part of ``h`` (ascending eigenvalues)."""
    h = as_matrix(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimMismatchError(f"expected a square matrix, got shape {h.shape}")
    _check_finite(h)
    try:
        w, v = np.linalg.eigh(hermitise(h))
    except np.linalg.LinAlgError as exc:
        raise NoConvergenceError(str(exc)) from exc
    return Spectrum(w, v)


_FUNCS = {
    "sqrt": np.sqrt,
    "log2": np.log2,
    "ln": np.log,
}


def matrix_function(h, f: str) -> np.ndarray:
    """Apply ``f`` in {"sqrt", "log2", "ln"} to a Hermitian PSD matrix.

    Eigenvalues below zero by less than ``1e-9 * trace`` are treated as zero;
    for the logarithms they are then clamped to ``LOG_FLOOR``.
    """
    if f not in _FUNCS:
        raise ValueError(f"unknown matrix function {f!r}")
    spec = hermitian_eig(h)
    w = spec.eigenvalues
    scale = max(abs(float(np.sum(w))), 1.0)
    if w[0] < -NEG_EIG_TOL * scale:
        raise NegativeEigenvalueError(f"min eigenvalue {w[0]:.3e} for {f}")
    if f == "sqrt":
        w = np.clip(w, 0.0, None)
    else:
        w = np.clip(w, LOG_FLOOR, None)
    fw = _FUNCS[f](w)
    v = spec.eigenvectors
    out = (v * fw) @ v.conj().T
    return hermitise(out)


def _noise_clip(w):
    """Zero eigenvalues at rounding-noise level so their square roots do not add up."""
    floor = 10.0 * w.size * np.finfo(float).eps * max(float(np.max(np.abs(w))), 1e-300)
    return np.where(w > floor, w, 0.0)


def _psd_sqrt(h):
    spec = hermitian_eig(h)
    w = _noise_clip(spec.eigenvalues)
    v = spec.eigenvectors
    return (v * np.sqrt(w)) @ v.conj().T


def _pair(a, b):
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise DimMismatchError(f"shape mismatch {a.shape} vs {b.shape}")
    da, db = dims_of(a), dims_of(b)
    if da is not None and db is not None and da != db:
        raise DimMismatchError(f"dims mismatch {da} vs {db}")
    return a, b


def bures_fidelity(sigma, rho) -> float:
    """Root fidelity ``Tr sqrt(sqrt(sigma) rho sqrt(sigma))`` (not squared)."""
    if isinstance(sigma, DensityMatrix) and isinstance(rho, DensityMatrix):
        if sigma.dims != rho.dims:
            raise DimMismatchError(f"dims mismatch {sigma.dims} vs {rho.dims}")
    s, r = _pair(sigma, rho)
    s, r = hermitise(s), hermitise(r)
    rs = _psd_sqrt(s)
    inner = hermitise(rs @ r @ rs)
    w = _noise_clip(np.linalg.eigvalsh(inner))
    return float(min(np.sum(np.sqrt(w)), 1.0))


def trace_norm(x) -> float:
    x = as_matrix(x)
    return float(np.sum(np.linalg.svd(x, compute_uv=False)))


def trace_distance(sigma, rho) -> float:
    if isinstance(sigma, DensityMatrix) and isinstance(rho, DensityMatrix):
        if sigma.dims != rho.dims:
            raise DimMismatchError(f"dims mismatch {sigma.dims} vs {rho.dims}")
    s, r = _pair(sigma, rho)
    w = np.linalg.eigvalsh(hermitise(s - r))
    return float(0.5 * np.sum(np.abs(w)))


def von_neumann_entropy(rho, base=2.0) -> float:
    w = np.linalg.eigvalsh(hermitise(rho))
    w = w[w > 0]
    return float(-np.sum(w * np.log(w)) / np.log(base))


def qre(rho, sigma, base=2.0) -> float:
    """Quantum relative entropy S(rho || sigma); ``inf`` on a support violation."""
    if isinstance(rho, DensityMatrix) and isinstance(sigma, DensityMatrix):
        if rho.dims != sigma.dims:
            raise DimMismatchError(f"dims mismatch {rho.dims} vs {sigma.dims}")
    r, s = _pair(rho, sigma)
    r, s = hermitise(r), hermitise(s)
    spec = hermitian_eig(s)
    w, v = spec.eigenvalues, spec.eigenvectors
    # weight of rho on each eigenvector of sigma
    weights = np.real(np.einsum("ij,ik,kj->j", v.conj(), r, v))
    if np.any((w < SUPPORT_THRESHOLD) & (weights > SUPPORT_WEIGHT)):
        return float("inf")
    log_w = np.log(np.clip(w, LOG_FLOOR, None))
    cross = float(np.sum(weights * log_w))
    wr = np.linalg.eigvalsh(r)
    wr = wr[wr > 0]
    self_term = float(np.sum(wr * np.log(wr)))
    val = (self_term - cross) / np.log(base)
    return max(val, 0.0)


def partial_transpose(rho, subsystem: int, dims: Sequence[int] = None) -> np.ndarray:
    """Transpose the indices of qudit ``subsystem`` (0-based)."""
    m = as_matrix(rho)
    if dims is None:
        dims = dims_of(rho)
    if dims is None or len(dims) < 2:
        raise BadSubsystemError("partial transpose needs at least two subsystems")
    dims = tuple(int(d) for d in dims)
    if int(np.prod(dims)) != m.shape[0]:
        raise DimMismatchError(f"dims {dims} do not match matrix {m.shape}")
    n = len(dims)
    if not 0 <= subsystem < n:
        raise BadSubsystemError(f"subsystem {subsystem} out of range for {n} parties")
    t = m.reshape(dims + dims)
    axes = list(range(2 * n))
    axes[subsystem], axes[n + subsystem] = axes[n + subsystem], axes[subsystem]
    return t.transpose(axes).reshape(m.shape)


def min_pt_eigenvalue(rho, subsystem=0, dims=None) -> float:
    return float(np.linalg.eigvalsh(hermitise(partial_transpose(rho, subsystem, dims)))[0])


def is_ppt(rho, dims=None, tol=1e-10) -> bool:
    """PPT across every single-party cut."""
    if dims is None:
        dims = dims_of(rho)
    return all(min_pt_eigenvalue(rho, k, dims) >= -tol for k in range(len(dims)))


def partial_trace(rho, keep: Sequence[int], dims: Sequence[int] = None) -> np.ndarray:
    m = as_matrix(rho)
    if dims is None:
        dims = dims_of(rho)
    dims = tuple(dims)
    n = len(dims)
    keep = sorted(keep)
    t = m.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyz"
    rows = [letters[i] for i in range(n)]
    cols = [letters[n + i] if i in keep else letters[i] for i in range(n)]
    out = "".join(rows[i] for i in keep) + "".join(cols[i] for i in keep)
    res = np.einsum("".join(rows) + "".join(cols) + "->" + out, t)
    dk = int(np.prod([dims[i] for i in keep]))
    return res.reshape(dk, dk)


def kron(a, b) -> np.ndarray:
    return np.kron(as_matrix(a), as_matrix(b))


def hadamard(a, b) -> np.ndarray:
    a, b = _pair(a, b)
    return a * b


def vectorise(rho) -> np.ndarray:
    """Row-major flattening: element (i, j) lands at index ``i * dim + j``."""
    return as_matrix(rho).reshape(-1).copy()


def devectorise(v, dim: int) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.size != dim * dim:
        raise DimMismatchError(f"vector of length {v.size} is not {dim}x{dim}")
    return v.reshape(dim, dim).copy()


def project_to_state(m):
    """Hermitise, clip negative eigenvalues and renormalise the trace.

    Returns ``(state, clipped)`` where ``clipped`` is the total negative weight
    that was removed.
    """
    spec = hermitian_eig(m)
    w = spec.eigenvalues
    clipped = float(-np.sum(w[w < 0]))
    w = np.clip(w, 0.0, None)
    v = spec.eigenvectors
    out = (v * w) @ v.conj().T
    tr = np.sum(w)
    return hermitise(out / tr), clipped


def random_density_matrix(dim, rng, rank=None):
    rank = dim if rank is None else rank
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = g @ g.conj().T
    return m / np.trace(m)
