"""Target states, channels and analytic reference values."""

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import BadParamError
from .qmath import DensityMatrix, as_matrix


def _dm(m, dims):
    return DensityMatrix.from_array(m, dims, check=False)


def projector(ket, dims):
    ket = np.asarray(ket, dtype=complex)
    ket = ket / np.linalg.norm(ket)
    return _dm(np.outer(ket, ket.conj()), dims)


def basis_ket(digits, dims):
    idx = 0
    for s, d in zip(digits, dims):
        idx = idx * d + s
    v = np.zeros(int(np.prod(dims)), dtype=complex)
    v[idx] = 1.0
    return v


def flip_operator(d):
    f = np.zeros((d * d, d * d))
    for i in range(d):
        for j in range(d):
            f[i * d + j, j * d + i] = 1.0
    return f


def phi_plus_ket(d):
    v = np.zeros(d * d, dtype=complex)
    v[:: d + 1] = 1.0
    return v / np.sqrt(d)


def phi_plus(d=2):
    return projector(phi_plus_ket(d), (d, d))


def werner(eta, d):
    if not -1.0 <= eta <= 1.0:
        raise BadParamError(f"Werner parameter must lie in [-1, 1], got {eta}")
    if d < 2:
        raise BadParamError(f"local dimension must be >= 2, got {d}")
    ident = np.eye(d * d)
    m = ((d - eta) * ident + (d * eta - 1.0) * flip_operator(d)) / (d * (d * d - 1.0))
    return _dm(m, (d, d))


def _xlog2x(x):
    return 0.0 if x <= 0 else x * np.log2(x)


def werner_ree(eta):
    """Closed-form relative entropy of entanglement of a Werner state (bits)."""
    if eta > 0 or eta < -1:
        raise BadParamError(f"closed form holds for eta in [-1, 0], got {eta}")
    return 0.5 * _xlog2x(1.0 + eta) + 0.5 * _xlog2x(1.0 - eta)


def isotropic_ree(p, d):
    """REE of the depolarising-channel Choi state (1-p) Phi+ + p I/d^2."""
    if not 0.0 <= p <= 1.0:
        raise BadParamError(f"depolarising probability must lie in [0, 1], got {p}")
    f = 1.0 - p + p / d**2
    if f <= 1.0 / d:
        return 0.0
    val = np.log2(d) + _xlog2x(f)
    if f < 1.0:
        val += (1.0 - f) * np.log2((1.0 - f) / (d - 1.0))
    return float(max(val, 0.0))


def bound_entangled(alpha):
    """Two-qutrit family that is separable, PPT-entangled, then NPT as alpha grows.

    Both diagonal blocks carry weight +1/3 so the mixture is a state on [2, 5].
    """
    if not 2.0 <= alpha <= 5.0:
        raise BadParamError(f"alpha must lie in [2, 5], got {alpha}")
    dims = (3, 3)
    m = (2.0 / 7.0) * phi_plus(3).mat
    for i, j in ((0, 1), (1, 2), (2, 0)):
        k = basis_ket((i, j), dims)
        m = m + (alpha / 21.0) * np.outer(k, k)
    for i, j in ((1, 0), (2, 1), (0, 2)):
        k = basis_ket((i, j), dims)
        m = m + ((5.0 - alpha) / 21.0) * np.outer(k, k)
    return _dm(m, dims)


def ghz_ket(d=2, n=3):
    dims = (d,) * n
    v = sum(basis_ket((i,) * n, dims) for i in range(d))
    return v / np.sqrt(d)


def w_ket():
    dims = (2, 2, 2)
    v = basis_ket((0, 0, 1), dims) + basis_ket((0, 1, 0), dims) + basis_ket((1, 0, 0), dims)
    return v / np.sqrt(3.0)


def ghz(d=2, n=3):
    return projector(ghz_ket(d, n), (d,) * n)


def w_state():
    return projector(w_ket(), (2, 2, 2))


def product_ket(local_kets):
    return reduce(np.kron, [np.asarray(k, dtype=complex) / np.linalg.norm(k) for k in local_kets])


def maximally_mixed(dims):
    n = int(np.prod(dims))
    return _dm(np.eye(n) / n, tuple(dims))


def depolarise(rho, p):
    """Global depolarising map (1-p) rho + p I / d^n."""
    if not 0.0 <= p <= 1.0:
        raise BadParamError(f"depolarising probability must lie in [0, 1], got {p}")
    m = as_matrix(rho)
    dims = rho.dims if isinstance(rho, DensityMatrix) else (m.shape[0],)
    n = m.shape[0]
    return _dm((1.0 - p) * m + p * np.trace(m) * np.eye(n) / n, dims)


def noisy_w(p):
    return depolarise(w_state(), p)


def noisy_ghz(p):
    return depolarise(ghz(2, 3), p)


@dataclass(frozen=True)
class ChannelSpec:
    kind: str
    d: int
    param: float = 0.0

    def __post_init__(self):
        if self.kind not in ("depolarising", "holevo_werner", "identity"):
            raise BadParamError(f"unknown channel kind {self.kind!r}")
        if self.d < 2:
            raise BadParamError(f"local dimension must be >= 2, got {self.d}")
        if self.kind == "depolarising" and not 0.0 <= self.param <= 1.0:
            raise BadParamError(f"depolarising p must lie in [0, 1], got {self.param}")
        if self.kind == "holevo_werner" and not -1.0 <= self.param <= 1.0:
            raise BadParamError(f"Holevo-Werner eta must lie in [-1, 1], got {self.param}")


def apply_channel(channel: ChannelSpec, x):
    """Single-qudit action; linear, so it is valid on operators like |i><j|."""
    x = np.asarray(x, dtype=complex)
    d = channel.d
    tr = np.trace(x)
    if channel.kind == "identity":
        return x.copy()
    if channel.kind == "depolarising":
        p = channel.param
        return (1.0 - p) * x + p * tr * np.eye(d) / d
    eta = channel.param
    return ((d - eta) * tr * np.eye(d) + (d * eta - 1.0) * x.T) / (d * d - 1.0)


def choi(channel: ChannelSpec):
    """Choi state obtained by sending the second half of Phi+ through the channel."""
    d = channel.d
    m = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            eij = np.zeros((d, d), dtype=complex)
            eij[i, j] = 1.0
            m += np.kron(eij, apply_channel(channel, eij)) / d
    return _dm(m, (d, d))


def channel_ree(channel: ChannelSpec):
    """Analytic single-shot REE of the Choi state, where known."""
    if channel.kind == "depolarising":
        return isotropic_ree(channel.param, channel.d)
    if channel.kind == "holevo_werner":
        return werner_ree(min(channel.param, 0.0))
    return float(np.log2(channel.d))
