"""Restricted-Boltzmann-machine parameterisations of pure and mixed qudit states.

Four families are provided:

``PureComplexParams``
    complex RBM wavefunction ``exp(a.s) prod_j 2 cosh(b_j + W_j.s)``.
``AmpPhaseParams``
    two real RBMs, amplitude ``psi(s)`` times phase factor ``exp(i log phi(s))``.
``MixedNDMParams``
    mixed state as the Hadamard product of a classical mixing network and a
    complex pure-state network.
``VecMixedParams``
    the same mixed state written with real amplitude/phase RBMs and a complex
    mixing layer split into real and imaginary weight matrices.

``ClassicalMixerParams`` is the mixing network on its own (plus local visible
biases); it can only represent fully separable states.

All sums run over the full computational basis. Hidden units are traced out
analytically, so every network is a closed-form function of the visible
configuration(s).
"""

from dataclasses import dataclass, field
from itertools import product
from math import ceil, log2

import numpy as np

from .errors import BranchCutError, ShapeMismatchError, ZeroTraceError
from .qmath import DensityMatrix

LOG2 = np.log(2.0)
BRANCH_CUT_TOL = 1e-12


# ---------------------------------------------------------------------------
# encodings


@dataclass(frozen=True)
class QuditEncoding:
    """Map a qudit value to a group of visible units.

    ``binary`` uses ceil(log2 d) units in {-1, +1} (most significant bit first)
    and needs ``d`` to be a power of two. ``onehot`` uses ``d`` units in {0, 1}.
    """

    kind: str
    d: int

    def __post_init__(self):
        if self.kind not in ("binary", "onehot"):
            raise ValueError(f"unknown encoding {self.kind!r}")
        if self.d < 2:
            raise ValueError(f"local dimension must be >= 2, got {self.d}")
        if self.kind == "binary" and self.d & (self.d - 1):
            raise ValueError(f"binary encoding needs a power-of-two dimension, got {self.d}")

    @classmethod
    def default(cls, d):
        return cls("binary" if d & (d - 1) == 0 else "onehot", d)

    @property
    def width(self) -> int:
        return max(1, ceil(log2(self.d))) if self.kind == "binary" else self.d

    def encode(self, s: int) -> np.ndarray:
        if not 0 <= s < self.d:
            raise ValueError(f"qudit value {s} outside [0, {self.d})")
        if self.kind == "onehot":
            g = np.zeros(self.d)
            g[s] = 1.0
            return g
        bits = [(s >> (self.width - 1 - i)) & 1 for i in range(self.width)]
        return 2.0 * np.array(bits, dtype=float) - 1.0

    def decode(self, g) -> int:
        g = np.asarray(g)
        if self.kind == "onehot":
            return int(np.argmax(g))
        s = 0
        for v in g:
            s = 2 * s + int(v > 0)
        return s

    def visible_matrix(self, n: int) -> np.ndarray:
        """Encoded visible vectors of every basis label, shape (d**n, n*width)."""
        rows = [np.concatenate([self.encode(s) for s in digits])
                for digits in product(range(self.d), repeat=n)]
        return np.array(rows)

    def to_json(self):
        return {"kind": self.kind, "d": self.d}


# ---------------------------------------------------------------------------
# numerics


def logcosh(z):
    """Principal-branch-free log cosh, stable for large |Re z|."""
    z = np.asarray(z)
    flip = np.real(z) < 0
    zz = np.where(flip, -z, z)
    with np.errstate(divide="ignore"):
        return zz + np.log1p(np.exp(-2.0 * zz)) - LOG2


def min_abs_cosh(z) -> float:
    z = np.asarray(z)
    if z.size == 0:
        return np.inf
    with np.errstate(over="ignore"):
        sq = np.sinh(np.real(z)) ** 2 + np.cos(np.imag(z)) ** 2
    return float(np.sqrt(np.min(sq)))


def _rbm_log(S, a, b, W, two=True):
    theta = S @ W + b
    out = S @ a + logcosh(theta).sum(axis=1)
    if two:
        out = out + W.shape[1] * LOG2
    return out, theta


def _rbm_contract(S, t, r):
    """Sum over configurations of (s, t, s t^T) weighted by ``r``."""
    ga = S.T @ r
    gb = t.T @ r
    gW = S.T @ (t * r[:, None])
    return ga, gb, gW


def _mix_terms(S, c, U):
    """phi_p(alpha, beta) = c_p + sum_k U_kp alpha_k + conj(U_kp) beta_k, shape (N, N, nm)."""
    left = S @ U
    right = S @ U.conj()
    return c[None, None, :] + left[:, None, :] + right[None, :, :]


def _mix_contract(S, phi, wt):
    """Gradient pieces for mixing biases and complex weights.

    Returns (gc, gU) with gU packed as Re-part gradient + 1j * Im-part gradient.
    """
    m = np.tanh(phi).conj() * wt[:, :, None]
    gc = np.real(m.sum(axis=(0, 1)))
    rows = m.sum(axis=1)
    cols = m.sum(axis=0)
    g_plus = S.T @ rows + S.T @ cols
    g_minus = S.T @ rows - S.T @ cols
    return gc, np.real(g_plus) + 1j * np.imag(g_minus)


# ---------------------------------------------------------------------------
# parameter containers


class Params:
    """Base for value-semantic parameter sets.

    ``FIELDS`` lists (name, is_complex). ``MASKED`` names the weight matrices
    a separability mask applies to.
    """

    FIELDS = ()
    MASKED = ()
    KIND = ""
    MIXED = False

    def arrays(self):
        return [(name, getattr(self, name), cplx) for name, cplx in self.FIELDS]

    def copy(self):
        return type(self)(**{n: np.array(a, copy=True) for n, a, _ in self.arrays()})

    def zeros_like(self):
        return type(self)(**{n: np.zeros_like(a) for n, a, _ in self.arrays()})

    @property
    def n_visible_units(self) -> int:
        return getattr(self, self.VISIBLE_LEADING[0]).shape[0]

    @property
    def n_hidden(self) -> int:
        return 0

    @property
    def n_mixing(self) -> int:
        return 0

    def to_flat(self) -> np.ndarray:
        """Flat real vector; complex entries are interleaved as [re, im]."""
        parts = []
        for _, arr, cplx in self.arrays():
            flat = np.asarray(arr).reshape(-1)
            if cplx:
                parts.append(np.stack([flat.real, flat.imag], axis=1).reshape(-1))
            else:
                parts.append(np.real(flat).astype(float))
        return np.concatenate(parts) if parts else np.zeros(0)

    def from_flat(self, v):
        v = np.asarray(v, dtype=float)
        kw = {}
        pos = 0
        for name, arr, cplx in self.arrays():
            size = arr.size * (2 if cplx else 1)
            chunk = v[pos:pos + size]
            pos += size
            if cplx:
                pair = chunk.reshape(-1, 2)
                kw[name] = (pair[:, 0] + 1j * pair[:, 1]).reshape(arr.shape)
            else:
                kw[name] = chunk.reshape(arr.shape).copy()
        if pos != v.size:
            raise ShapeMismatchError(f"flat vector has {v.size} entries, expected {pos}")
        return type(self)(**kw)

    def size(self) -> int:
        return sum(a.size * (2 if c else 1) for _, a, c in self.arrays())

    def mask_flat(self, mask) -> np.ndarray:
        """Boolean vector over ``to_flat`` coordinates; False where the mask forbids."""
        keep = []
        for name, arr, cplx in self.arrays():
            if name in self.MASKED and mask is not None and arr.size:
                m = np.asarray(mask, dtype=bool)
                if m.shape != arr.shape:
                    raise ShapeMismatchError(f"mask shape {m.shape} vs {name} {arr.shape}")
                m = m.reshape(-1)
            else:
                m = np.ones(arr.size, dtype=bool)
            keep.append(np.repeat(m, 2) if cplx else m)
        return np.concatenate(keep) if keep else np.zeros(0, dtype=bool)

    def apply_mask(self, mask):
        if mask is None:
            return self.copy()
        return self.from_flat(np.where(self.mask_flat(mask), self.to_flat(), 0.0))

    def check_shapes(self, S):
        nv = S.shape[1]
        for name, arr, _ in self.arrays():
            if name in self.VISIBLE_LEADING and arr.shape[0] != nv:
                raise ShapeMismatchError(
                    f"{name} has {arr.shape[0]} visible rows, encoding gives {nv}")
        self._check_hidden()

    VISIBLE_LEADING = ()

    def _check_hidden(self):
        pass

    def to_json(self):
        return {name: self._pack(arr, cplx) for name, arr, cplx in self.arrays()}

    @staticmethod
    def _pack(arr, cplx):
        flat = np.asarray(arr).reshape(-1)
        if cplx:
            return np.stack([flat.real, flat.imag], axis=1).reshape(-1).tolist()
        return np.real(flat).tolist()

    @classmethod
    def from_json(cls, data, shapes):
        kw = {}
        for name, cplx in cls.FIELDS:
            vals = np.asarray(data[name], dtype=float)
            if cplx:
                pair = vals.reshape(-1, 2)
                vals = pair[:, 0] + 1j * pair[:, 1]
            kw[name] = vals.reshape(shapes[name])
        return cls(**kw)

    def max_abs(self) -> float:
        v = self.to_flat()
        return float(np.max(np.abs(v))) if v.size else 0.0


def _check_rbm(a, b, W, label):
    if W.shape != (a.shape[0], b.shape[0]):
        raise ShapeMismatchError(
            f"{label}: W shape {W.shape} inconsistent with a {a.shape} and b {b.shape}")


@dataclass(eq=False)
class PureComplexParams(Params):
    a: np.ndarray
    b: np.ndarray
    W: np.ndarray

    FIELDS = (("a", True), ("b", True), ("W", True))
    MASKED = ("W",)
    VISIBLE_LEADING = ("a", "W")
    KIND = "pure_complex"

    @property
    def n_hidden(self):
        return self.b.shape[0]

    def _check_hidden(self):
        _check_rbm(self.a, self.b, self.W, self.KIND)

    def log_values(self, S):
        self.check_shapes(S)
        out, _ = _rbm_log(S, self.a, self.b, self.W)
        return out

    def contract(self, S, wt):
        theta = S @ self.W + self.b
        ga, gb, gW = _rbm_contract(S, np.tanh(theta).conj(), wt)
        # holomorphic parameters: Re-part gradient Re(G), Im-part gradient Im(G)
        return PureComplexParams(ga, gb, gW)


@dataclass(eq=False)
class AmpPhaseParams(Params):
    a: np.ndarray
    b: np.ndarray
    W: np.ndarray
    c: np.ndarray
    d: np.ndarray
    U: np.ndarray

    FIELDS = (("a", False), ("b", False), ("W", False),
              ("c", False), ("d", False), ("U", False))
    MASKED = ("W", "U")
    VISIBLE_LEADING = ("a", "W", "c", "U")
    KIND = "amp_phase"

    @property
    def n_hidden(self):
        return self.b.shape[0]

    def _check_hidden(self):
        _check_rbm(self.a, self.b, self.W, "amplitude")
        _check_rbm(self.c, self.d, self.U, "phase")

    def amplitude_log(self, S):
        return _rbm_log(S, self.a, self.b, self.W)

    def phase_log(self, S):
        return _rbm_log(S, self.c, self.d, self.U)

    def log_values(self, S):
        self.check_shapes(S)
        la, _ = self.amplitude_log(S)
        lp, _ = self.phase_log(S)
        return la + 1j * lp

    def contract(self, S, wt):
        ta = np.tanh(S @ self.W + self.b)
        tp = np.tanh(S @ self.U + self.d)
        ga, gb, gW = _rbm_contract(S, ta, np.real(wt))
        gc, gd, gU = _rbm_contract(S, tp, np.imag(wt))
        return AmpPhaseParams(ga, gb, gW, gc, gd, gU)


@dataclass(eq=False)
class MixedNDMParams(Params):
    c: np.ndarray
    U: np.ndarray
    a: np.ndarray
    b: np.ndarray
    W: np.ndarray

    FIELDS = (("c", False), ("U", True), ("a", True), ("b", True), ("W", True))
    MASKED = ("W",)
    VISIBLE_LEADING = ("U", "a", "W")
    KIND = "mixed_ndm"
    MIXED = True

    @property
    def n_hidden(self):
        return self.b.shape[0]

    @property
    def n_mixing(self):
        return self.c.shape[0]

    def _check_hidden(self):
        _check_rbm(self.a, self.b, self.W, "pure layer")
        if self.U.shape != (self.a.shape[0], self.c.shape[0]):
            raise ShapeMismatchError(f"mixing U shape {self.U.shape} inconsistent")

    def log_values(self, S):
        self.check_shapes(S)
        theta = S @ self.W + self.b
        lf = S @ self.a + logcosh(theta).sum(axis=1)
        phi = _mix_terms(S, np.real(self.c), self.U)
        return lf[:, None] + lf.conj()[None, :] + logcosh(phi).sum(axis=2)

    def contract(self, S, wt):
        t = np.tanh(S @ self.W + self.b)
        rows, cols = wt.sum(axis=1), wt.sum(axis=0)
        A = _rbm_contract(S, t.conj(), rows)
        B = _rbm_contract(S, t, cols)
        ga, gb, gW = (x + y.conj() for x, y in zip(A, B))
        gc, gU = _mix_contract(S, _mix_terms(S, np.real(self.c), self.U), wt)
        return MixedNDMParams(gc, gU, ga, gb, gW)


@dataclass(eq=False)
class ClassicalMixerParams(Params):
    a: np.ndarray
    c: np.ndarray
    U: np.ndarray

    FIELDS = (("a", True), ("c", False), ("U", True))
    VISIBLE_LEADING = ("a", "U")
    KIND = "classical_mixer"
    MIXED = True

    @property
    def n_mixing(self):
        return self.c.shape[0]

    def _check_hidden(self):
        if self.U.shape != (self.a.shape[0], self.c.shape[0]):
            raise ShapeMismatchError(f"mixing U shape {self.U.shape} inconsistent")

    def log_values(self, S):
        self.check_shapes(S)
        la = S @ self.a
        phi = _mix_terms(S, np.real(self.c), self.U)
        return la[:, None] + la.conj()[None, :] + logcosh(phi).sum(axis=2)

    def contract(self, S, wt):
        rows, cols = wt.sum(axis=1), wt.sum(axis=0)
        A = S.T @ rows
        B = S.T @ cols
        ga = A + B.conj()
        gc, gU = _mix_contract(S, _mix_terms(S, np.real(self.c), self.U), wt)
        return ClassicalMixerParams(ga, gc, gU)


@dataclass(eq=False)
class VecMixedParams(Params):
    amp_a: np.ndarray
    amp_b: np.ndarray
    amp_W: np.ndarray
    ph_a: np.ndarray
    ph_b: np.ndarray
    ph_W: np.ndarray
    mix_c: np.ndarray
    mix_R: np.ndarray
    mix_I: np.ndarray

    FIELDS = (("amp_a", False), ("amp_b", False), ("amp_W", False),
              ("ph_a", False), ("ph_b", False), ("ph_W", False),
              ("mix_c", False), ("mix_R", False), ("mix_I", False))
    MASKED = ("amp_W", "ph_W")
    VISIBLE_LEADING = ("amp_a", "amp_W", "ph_a", "ph_W", "mix_R", "mix_I")
    KIND = "vec_mixed"
    MIXED = True

    @property
    def n_hidden(self):
        return self.amp_b.shape[0]

    @property
    def n_mixing(self):
        return self.mix_c.shape[0]

    def _check_hidden(self):
        _check_rbm(self.amp_a, self.amp_b, self.amp_W, "amplitude")
        _check_rbm(self.ph_a, self.ph_b, self.ph_W, "phase")
        if self.mix_R.shape != (self.amp_a.shape[0], self.mix_c.shape[0]):
            raise ShapeMismatchError(f"mixing R shape {self.mix_R.shape} inconsistent")
        if self.mix_I.shape != self.mix_R.shape:
            raise ShapeMismatchError("mixing R and I shapes differ")

    @property
    def mix_U(self):
        return self.mix_R + 1j * self.mix_I

    def parts(self, S):
        """Log-amplitude and phase pieces of every (alpha, beta) element.

        Returns ``(log_gamma, log_r, log_Phi, log_theta, mu_plus_ipsi)`` where
        ``exp(log_gamma + log_r)`` is the modulus and ``log_Phi + log_theta`` the
        phase of each element.
        """
        la, _ = _rbm_log(S, self.amp_a, self.amp_b, self.amp_W)
        lp, _ = _rbm_log(S, self.ph_a, self.ph_b, self.ph_W)
        log_gamma = la[:, None] + la[None, :]
        log_Phi = lp[:, None] - lp[None, :]
        z = _mix_terms(S, self.mix_c, self.mix_U)
        lc = logcosh(z).sum(axis=2)
        return log_gamma, np.real(lc), log_Phi, np.imag(lc), z

    def log_values(self, S):
        self.check_shapes(S)
        log_gamma, log_r, log_Phi, log_theta, _ = self.parts(S)
        return log_gamma + log_r + 1j * (log_Phi + log_theta)

    def contract(self, S, wt):
        ta = np.tanh(S @ self.amp_W + self.amp_b)
        tp = np.tanh(S @ self.ph_W + self.ph_b)
        rows, cols = wt.sum(axis=1), wt.sum(axis=0)
        amp = [x + y for x, y in zip(_rbm_contract(S, ta, np.real(rows)),
                                     _rbm_contract(S, ta, np.real(cols)))]
        ph = [x - y for x, y in zip(_rbm_contract(S, tp, np.imag(rows)),
                                    _rbm_contract(S, tp, np.imag(cols)))]
        gc, gU = _mix_contract(S, _mix_terms(S, self.mix_c, self.mix_U), wt)
        return VecMixedParams(*amp, *ph, gc, np.real(gU), np.imag(gU))


FAMILIES = {cls.KIND: cls for cls in
            (PureComplexParams, AmpPhaseParams, MixedNDMParams, ClassicalMixerParams, VecMixedParams)}


# ---------------------------------------------------------------------------
# ansatz description


@dataclass
class Ansatz:
    """Layer sizes, encoding and (optional) separability mask of a network family."""

    kind: str
    n: int
    d: int
    n_h: int = 0
    n_m: int = 0
    encoding: QuditEncoding = None
    mask: np.ndarray = None
    _S: np.ndarray = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise ValueError(f"unknown ansatz kind {self.kind!r}")
        if self.encoding is None:
            self.encoding = QuditEncoding.default(self.d)
        if self.encoding.d != self.d:
            raise ShapeMismatchError("encoding dimension differs from ansatz dimension")
        if self.kind == "classical_mixer":
            self.n_h = 0
        if self.kind in ("pure_complex", "amp_phase"):
            self.n_m = 0
        if self.mask is not None:
            self.mask = np.asarray(self.mask, dtype=bool)
            if self.mask.shape != (self.n_visible_units, self.n_h):
                raise ShapeMismatchError(
                    f"mask shape {self.mask.shape} vs ({self.n_visible_units}, {self.n_h})")

    @property
    def family(self):
        return FAMILIES[self.kind]

    @property
    def mixed(self) -> bool:
        return self.family.MIXED

    @property
    def n_visible_units(self) -> int:
        return self.n * self.encoding.width

    @property
    def dim(self) -> int:
        return self.d ** self.n

    @property
    def dims(self):
        return (self.d,) * self.n

    @property
    def visible(self) -> np.ndarray:
        if self._S is None:
            self._S = self.encoding.visible_matrix(self.n)
        return self._S

    def shapes(self):
        nv, nh, nm = self.n_visible_units, self.n_h, self.n_m
        return {
            "pure_complex": {"a": (nv,), "b": (nh,), "W": (nv, nh)},
            "amp_phase": {"a": (nv,), "b": (nh,), "W": (nv, nh),
                          "c": (nv,), "d": (nh,), "U": (nv, nh)},
            "mixed_ndm": {"c": (nm,), "U": (nv, nm), "a": (nv,), "b": (nh,), "W": (nv, nh)},
            "classical_mixer": {"a": (nv,), "c": (nm,), "U": (nv, nm)},
            "vec_mixed": {"amp_a": (nv,), "amp_b": (nh,), "amp_W": (nv, nh),
                          "ph_a": (nv,), "ph_b": (nh,), "ph_W": (nv, nh),
                          "mix_c": (nm,), "mix_R": (nv, nm), "mix_I": (nv, nm)},
        }[self.kind]

    def zeros(self):
        fam = self.family
        shapes = self.shapes()
        return fam(**{name: np.zeros(shapes[name], dtype=complex if cplx else float)
                      for name, cplx in fam.FIELDS})

    def init_params(self, rng, scale=0.01):
        """Independent Gaussians (std ``scale`` per real/imag part), then masked."""
        p = self.zeros()
        v = rng.normal(0.0, scale, size=p.size())
        return p.from_flat(v).apply_mask(self.mask)

    def log_values(self, params):
        return params.log_values(self.visible)

    def values(self, params, normalise=False):
        """Unnormalised amplitudes (pure) or vectorised matrix elements (mixed)."""
        lv = np.ravel(self.log_values(params))
        if normalise:
            lv = lv - np.max(np.real(lv))
        return np.exp(lv)

    def state(self, params):
        """Normalised ket (pure) or trace-one :class:`DensityMatrix` (mixed)."""
        v = self.values(params, normalise=True)
        if not self.mixed:
            return v / np.linalg.norm(v)
        m = v.reshape(self.dim, self.dim)
        tr = np.real(np.trace(m))
        if not tr > 1e-300:
            raise ZeroTraceError(f"network trace {tr:.3e}")
        return DensityMatrix.from_array(m / tr, self.dims, check=False)

    def to_json(self, params):
        return {
            "ansatz": self.kind,
            "n_v": self.n,
            "n_h": self.n_h,
            "n_m": self.n_m,
            "d": self.d,
            "encoding": self.encoding.kind,
            "mask": None if self.mask is None else self.mask.astype(int).tolist(),
            "params": params.to_json(),
        }

    @classmethod
    def from_json(cls, data):
        mask = data.get("mask")
        ans = cls(data["ansatz"], data["n_v"], data["d"], data.get("n_h", 0), data.get("n_m", 0),
                  QuditEncoding(data.get("encoding", "binary"), data["d"]),
                  None if mask is None else np.array(mask, dtype=bool))
        return ans, ans.family.from_json(data["params"], ans.shapes())


def check_branch_cut(params: VecMixedParams, S):
    z = _mix_terms(S, params.mix_c, params.mix_U)
    m = min_abs_cosh(z)
    if m < BRANCH_CUT_TOL:
        raise BranchCutError(f"|cosh(mu + i psi)| = {m:.3e} on the mixing layer")
    return m


# ---------------------------------------------------------------------------
# evaluation helpers


def _enc_for(params, encoding, n):
    if n is None:
        nv = params.n_visible_units
        if nv % encoding.width:
            raise ShapeMismatchError(f"{nv} visible units not divisible by width {encoding.width}")
        n = nv // encoding.width
    return encoding.visible_matrix(n), n


def eval_pure(params, encoding, n=None) -> np.ndarray:
    """Unnormalised amplitudes of a pure network over all d**n basis labels."""
    if not isinstance(params, (PureComplexParams, AmpPhaseParams)):
        raise TypeError("eval_pure needs PureComplexParams or AmpPhaseParams")
    S, _ = _enc_for(params, encoding, n)
    return np.exp(params.log_values(S))


def _normalised_dm(log_m, dims):
    m = np.exp(log_m - np.max(np.real(log_m)))
    tr = np.real(np.trace(m))
    if not tr > 1e-300:
        raise ZeroTraceError(f"network trace {tr:.3e}")
    return DensityMatrix.from_array(m / tr, dims, check=False)


def eval_mixed_ndm(params: MixedNDMParams, encoding, n=None) -> DensityMatrix:
    S, n = _enc_for(params, encoding, n)
    return _normalised_dm(params.log_values(S), (encoding.d,) * n)


def eval_classical_mixer(params: ClassicalMixerParams, encoding, n=None) -> DensityMatrix:
    S, n = _enc_for(params, encoding, n)
    return _normalised_dm(params.log_values(S), (encoding.d,) * n)


def eval_vec_mixed(params: VecMixedParams, encoding, n=None) -> np.ndarray:
    """Vectorised (row-major) unnormalised density matrix elements."""
    S, n = _enc_for(params, encoding, n)
    params.check_shapes(S)
    check_branch_cut(params, S)
    return np.exp(params.log_values(S)).reshape(-1)


def vec_mixed_components(params: VecMixedParams, encoding, n=None):
    """Gamma, r, Phi and vartheta of every element (the last two unit-modulus)."""
    S, n = _enc_for(params, encoding, n)
    check_branch_cut(params, S)
    log_gamma, log_r, log_Phi, log_theta, _ = params.parts(S)
    return (np.exp(log_gamma), np.exp(log_r), np.exp(1j * log_Phi), np.exp(1j * log_theta))
