"""Fidelity-based reconstruction of target states with (separable) network states.

The loss is the negative log of the normalised overlap between the network
vector and the target vector; for mixed states both are vectorised density
matrices. Gradients are exact sums over the whole basis.
"""

import csv
import logging
import time
from dataclasses import dataclass, field, asdict
from typing import Optional

import numpy as np

from .ansatz import FAMILIES, Ansatz, AmpPhaseParams, QuditEncoding, VecMixedParams, min_abs_cosh
from .errors import (
    BadParamError,
    BranchCutError,
    ConfigError,
    DivergedError,
    InconsistentPartitionsError,
    NonFiniteError,
    ZeroNormError,
    ZeroOverlapError,
)
from .qmath import (
    DensityMatrix,
    as_matrix,
    bures_fidelity,
    project_to_state,
    qre,
    trace_distance,
)

log = logging.getLogger(__name__)

MONITOR_EVERY = 25
SERIES_COLUMNS = ("iter", "loss", "fidelity", "qre", "trace_distance")

K_SEPARABLE = "K_SEPARABLE"
ENTANGLED_BEYOND_K = "ENTANGLED_BEYOND_K"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class TargetDecomposition:
    """Target split into non-negative amplitudes and unit-modulus phase factors."""

    lam: np.ndarray
    xi: np.ndarray

    @classmethod
    def from_vector(cls, chi):
        chi = np.ravel(np.asarray(chi, dtype=complex))
        lam = np.abs(chi)
        xi = np.ones_like(chi)
        nz = lam > 0
        xi[nz] = chi[nz] / lam[nz]
        return cls(lam, xi)

    @classmethod
    def from_target(cls, target):
        """Pure kets stay as they are; density matrices are vectorised row-major."""
        if isinstance(target, DensityMatrix) or np.ndim(target) == 2:
            return cls.from_vector(as_matrix(target).reshape(-1))
        return cls.from_vector(target)

    def vector(self):
        return self.lam * self.xi


def _overlap_parts(v, chi):
    z = np.vdot(v, chi)
    n = np.real(np.vdot(v, v))
    m = np.real(np.vdot(chi, chi))
    return z, n, m


def loss_from_vectors(v, chi) -> float:
    """-log sqrt(|<v|chi>|^2 / (<v|v><chi|chi>)); ``inf`` for orthogonal vectors."""
    v = np.ravel(np.asarray(v, dtype=complex))
    chi = np.ravel(np.asarray(chi, dtype=complex))
    if v.shape != chi.shape:
        raise ValueError(f"shape mismatch {v.shape} vs {chi.shape}")
    z, n, m = _overlap_parts(v, chi)
    if n < 1e-300 or m < 1e-300:
        raise ZeroNormError("zero-norm vector in fidelity loss")
    if abs(z) == 0.0:
        return float("inf")
    val = -np.log(abs(z)) + 0.5 * np.log(n) + 0.5 * np.log(m)
    return float(max(val, 0.0))


def loss(ansatz: Ansatz, params, target) -> float:
    return loss_from_vectors(ansatz.values(params, normalise=True),
                             TargetDecomposition.from_target(target).vector())


def _delta(modulus, phase, dec: TargetDecomposition):
    """Per-element Delta = exp(i(arg target - arg network)) / <network|target>."""
    z = np.sum(modulus * np.conj(phase) * dec.lam * dec.xi)
    if abs(z) < 1e-300:
        raise ZeroOverlapError("network and target are orthogonal; Delta undefined")
    return dec.xi * np.conj(phase) / z, z


def _weights_delta(modulus, phase, dec):
    n = np.sum(modulus**2)
    if n < 1e-300:
        raise ZeroNormError("network state has zero norm")
    delta, z = _delta(modulus, phase, dec)
    wt = modulus**2 / n - modulus * dec.lam * delta
    return wt, z, n


def grad_pure(ansatz: Ansatz, params: AmpPhaseParams, dec: TargetDecomposition):
    """Amplitude and phase gradients of the loss for the amplitude/phase ansatz.

    The amplitude part is ``sum_s [psi^2/N - lambda psi Re Delta] O_k`` and the
    phase part ``-sum_s lambda psi Im Delta O_k``; both are obtained from one
    complex weight whose real/imaginary parts feed the two log-derivative sums.
    Returns ``(gradient, loss)``.
    """
    S = ansatz.visible
    la, _ = params.amplitude_log(S)
    lp, _ = params.phase_log(S)
    shift = np.max(la)
    psi = np.exp(la - shift)
    phase = np.exp(1j * lp)
    wt, z, n = _weights_delta(psi, phase, dec)
    m = np.sum(dec.lam**2)
    val = float(max(-np.log(abs(z)) + 0.5 * np.log(n) + 0.5 * np.log(m), 0.0))
    return params.contract(S, wt), val


def grad_mixed(ansatz: Ansatz, params: VecMixedParams, dec: TargetDecomposition):
    """Gradients for the vectorised mixed ansatz.

    With modulus ``Gamma r`` and phase ``Phi vartheta`` the element weight is
    ``Gamma^2 r^2 / N - lambda Gamma r Delta``; its real part drives the
    amplitude (Gamma, r) log-derivatives and its imaginary part the phase
    (Phi, vartheta) ones. Returns ``(gradient, loss)``.
    """
    S = ansatz.visible
    log_gamma, log_r, log_Phi, log_theta, mix = params.parts(S)
    if mix.size and min_abs_cosh(mix) == 0.0:
        raise BranchCutError("mixing-layer cosh is exactly zero; gradient undefined")
    lmod = log_gamma + log_r
    modulus = np.exp(lmod - np.max(lmod)).reshape(-1)
    phase = np.exp(1j * (log_Phi + log_theta)).reshape(-1)
    wt, z, n = _weights_delta(modulus, phase, dec)
    m = np.sum(dec.lam**2)
    val = float(max(-np.log(abs(z)) + 0.5 * np.log(n) + 0.5 * np.log(m), 0.0))
    N = ansatz.dim
    return params.contract(S, wt.reshape(N, N)), val


def grad_generic(ansatz: Ansatz, params, dec: TargetDecomposition):
    """Gradient for any family from its complex log-derivatives.

    dL/dx = Re sum conj(d log v / dx) (|v|^2/N - conj(v) chi / <v|chi>).
    """
    S = ansatz.visible
    lv = np.ravel(params.log_values(S))
    v = np.exp(lv - np.max(np.real(lv)))
    chi = dec.vector()
    z, n, m = _overlap_parts(v, chi)
    if n < 1e-300:
        raise ZeroNormError("network state has zero norm")
    if abs(z) < 1e-300:
        raise ZeroOverlapError("network and target are orthogonal")
    wt = np.abs(v) ** 2 / n - np.conj(v) * chi / z
    val = float(max(-np.log(abs(z)) + 0.5 * np.log(n) + 0.5 * np.log(m), 0.0))
    if ansatz.mixed:
        wt = wt.reshape(ansatz.dim, ansatz.dim)
    return params.contract(S, wt), val


def loss_and_grad(ansatz: Ansatz, params, dec: TargetDecomposition):
    if isinstance(params, AmpPhaseParams):
        return grad_pure(ansatz, params, dec)
    if isinstance(params, VecMixedParams):
        return grad_mixed(ansatz, params, dec)
    return grad_generic(ansatz, params, dec)


def finite_difference_grad(ansatz: Ansatz, params, target, step=1e-5, coords=None):
    """Central differences of :func:`loss` over flat parameter coordinates."""
    chi = TargetDecomposition.from_target(target).vector()
    x0 = params.to_flat()
    coords = range(x0.size) if coords is None else coords
    out = np.zeros(x0.size)
    for i in coords:
        xp, xm = x0.copy(), x0.copy()
        xp[i] += step
        xm[i] -= step
        lp = loss_from_vectors(ansatz.values(params.from_flat(xp), normalise=True), chi)
        lm = loss_from_vectors(ansatz.values(params.from_flat(xm), normalise=True), chi)
        out[i] = (lp - lm) / (2 * step)
    return out


# ---------------------------------------------------------------------------
# training


@dataclass
class LearnConfig:
    learning_rate: float = 0.05
    max_iters: int = 20000
    seed: int = 0
    eps: float = 1e-4
    restarts: int = 5
    warm_start: bool = False
    monitor: tuple = ("fidelity", "qre", "trace_distance")
    optimizer: str = "adam"
    monitor_every: int = MONITOR_EVERY
    init_scale: float = 0.1
    tol_loss: float = 0.0
    patience: int = 0
    lr_final: Optional[float] = 1e-4
    stop_on_fopt: bool = False
    family: Optional[str] = None

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning rate must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if not 0.0 < self.eps < 1.0:
            raise ValueError("eps must lie in (0, 1)")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if self.optimizer not in ("gd", "adam"):
            raise ValueError(f"unknown optimizer {self.optimizer!r}")
        self.monitor = tuple(self.monitor)

    @property
    def f_opt(self) -> float:
        return 1.0 - self.eps

    def to_json(self):
        return asdict(self)


@dataclass
class TrainReport:
    iters: list = field(default_factory=list)
    loss: list = field(default_factory=list)
    monitor_iters: list = field(default_factory=list)
    fidelity: list = field(default_factory=list)
    qre: list = field(default_factory=list)
    trace_distance: list = field(default_factory=list)
    params: object = None
    final_fidelity: float = float("nan")
    final_trace_distance: float = float("nan")
    final_qre: float = float("nan")
    best_qre: float = float("inf")
    best_qre_iter: int = -1
    best_qre_params: object = None
    best_fidelity: float = 0.0
    best_fidelity_iter: int = -1
    best_fidelity_params: object = None
    qre_at_best_fidelity: float = float("nan")
    converged: bool = False
    learning_rate: float = float("nan")
    iterations: int = 0
    seed: int = 0
    qre_clip: float = 0.0
    elapsed: float = 0.0
    ansatz: object = None

    @property
    def learnable(self):
        return self.final_fidelity

    def series_rows(self):
        """Per-iteration rows: iter, loss, fidelity, qre, trace_distance (blank when unmonitored)."""
        mon = {it: k for k, it in enumerate(self.monitor_iters)}
        rows = []
        for it, lval in zip(self.iters, self.loss):
            k = mon.get(it)
            if k is None:
                rows.append((it, lval, None, None, None))
            else:
                rows.append((it, lval, self._get(self.fidelity, k), self._get(self.qre, k),
                             self._get(self.trace_distance, k)))
        return rows

    @staticmethod
    def _get(seq, k):
        return seq[k] if k < len(seq) else None

    @property
    def qre_fidelity_mismatch(self) -> bool:
        """True when the QRE at the fidelity optimum exceeds the best QRE by more than 1e-3."""
        if not (np.isfinite(self.best_qre) and np.isfinite(self.qre_at_best_fidelity)):
            return False
        return self.qre_at_best_fidelity - self.best_qre > 1e-3

    def write_csv(self, path):
        """Per-iteration series with columns iter, loss, fidelity, qre, trace_distance."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(SERIES_COLUMNS)
            for row in self.series_rows():
                w.writerow(["" if x is None else (repr(float(x)) if not isinstance(x, int) else x)
                            for x in row])

    def to_json(self):
        out = {
            "iterations": self.iterations,
            "seed": self.seed,
            "learning_rate": self.learning_rate,
            "final_fidelity": self.final_fidelity,
            "final_trace_distance": self.final_trace_distance,
            "final_qre": _finite(self.final_qre),
            "best_qre": _finite(self.best_qre),
            "best_qre_iter": self.best_qre_iter,
            "best_fidelity": self.best_fidelity,
            "best_fidelity_iter": self.best_fidelity_iter,
            "qre_at_best_fidelity": _finite(self.qre_at_best_fidelity),
            "qre_fidelity_mismatch": bool(self.qre_fidelity_mismatch),
            "converged": bool(self.converged),
            "qre_clip": self.qre_clip,
            "elapsed_s": self.elapsed,
            "series": {
                "iter": self.iters,
                "loss": self.loss,
                "monitor_iter": self.monitor_iters,
                "fidelity": self.fidelity,
                "qre": [_finite(q) for q in self.qre],
                "trace_distance": self.trace_distance,
            },
        }
        if self.ansatz is not None and self.params is not None:
            out["network"] = self.ansatz.to_json(self.params)
        return out


def _finite(x):
    return x if x is None or np.isfinite(x) else None


def _as_state(target, ansatz):
    if isinstance(target, DensityMatrix):
        return target
    t = np.asarray(target, dtype=complex)
    if t.ndim == 1:
        t = t / np.linalg.norm(t)
        return DensityMatrix.from_array(np.outer(t, t.conj()), ansatz.dims, check=False)
    return DensityMatrix.from_array(t, ansatz.dims, check=False)


def learner_state(ansatz: Ansatz, params) -> DensityMatrix:
    """Density matrix of a network (projector for pure families)."""
    st = ansatz.state(params)
    if isinstance(st, DensityMatrix):
        return st
    return DensityMatrix.from_array(np.outer(st, st.conj()), ansatz.dims, check=False)


def evaluate(ansatz: Ansatz, params, target_state: DensityMatrix, monitor=("fidelity", "qre", "trace_distance")):
    rho = learner_state(ansatz, params)
    out = {}
    if "fidelity" in monitor:
        out["fidelity"] = bures_fidelity(target_state, rho)
    if "trace_distance" in monitor:
        out["trace_distance"] = trace_distance(target_state, rho)
    if "qre" in monitor:
        proj, clip = project_to_state(rho.mat)
        out["qre"] = qre(target_state, proj)
        out["qre_clip"] = clip
    return out


class _Adam:
    def __init__(self, size, lr, beta1=0.9, beta2=0.999, eps=1e-12):
        self.m = np.zeros(size)
        self.v = np.zeros(size)
        self.t = 0
        self.lr, self.b1, self.b2, self.eps = lr, beta1, beta2, eps

    def step(self, g):
        self.t += 1
        self.m = self.b1 * self.m + (1 - self.b1) * g
        self.v = self.b2 * self.v + (1 - self.b2) * g * g
        mh = self.m / (1 - self.b1**self.t)
        vh = self.v / (1 - self.b2**self.t)
        return self.lr * mh / (np.sqrt(vh) + self.eps)


def train(ansatz: Ansatz, target, config: LearnConfig, mask=None, init=None, seed=None,
          max_iters=None) -> TrainReport:
    """Gradient descent on the fidelity loss.

    ``mask`` defaults to ``ansatz.mask``; masked weights are zero at every step.
    ``init`` (parameters) overrides the seeded Gaussian initialisation.
    """
    t0 = time.perf_counter()
    mask = ansatz.mask if mask is None else mask
    seed = config.seed if seed is None else seed
    max_iters = config.max_iters if max_iters is None else max_iters
    rng = np.random.default_rng(seed)
    params = (init.apply_mask(mask) if init is not None
              else ansatz.init_params(rng, config.init_scale).apply_mask(mask))
    keep = params.mask_flat(mask)
    dec = TargetDecomposition.from_target(target)
    state = _as_state(target, ansatz)
    x = params.to_flat()
    lr = config.learning_rate
    adam = _Adam(x.size, lr) if config.optimizer == "adam" else None
    rep = TrainReport(seed=seed, ansatz=ansatz)
    window = []
    best_window = np.inf
    scale = 1.0
    best_loss, stall = np.inf, 0

    def monitor(it, p):
        vals = evaluate(ansatz, p, state, config.monitor)
        rep.monitor_iters.append(it)
        if "fidelity" in vals:
            rep.fidelity.append(vals["fidelity"])
            if vals["fidelity"] > rep.best_fidelity:
                rep.best_fidelity, rep.best_fidelity_iter = vals["fidelity"], it
                rep.best_fidelity_params = p
                rep.qre_at_best_fidelity = vals.get("qre", float("nan"))
        if "trace_distance" in vals:
            rep.trace_distance.append(vals["trace_distance"])
        if "qre" in vals:
            rep.qre.append(vals["qre"])
            if vals["qre"] < rep.best_qre:
                rep.best_qre, rep.best_qre_iter = vals["qre"], it
                rep.best_qre_params = p
                rep.qre_clip = vals["qre_clip"]
        return vals

    it = 0
    for it in range(max_iters):
        p = params.from_flat(x)
        g, val = loss_and_grad(ansatz, p, dec)
        if not np.isfinite(val):
            raise NonFiniteError(f"loss became {val} at iteration {it}")
        if val > 1e6:
            raise DivergedError(f"loss {val:.3e} at iteration {it}")
        rep.iters.append(it)
        rep.loss.append(val)
        if it % config.monitor_every == 0:
            vals = monitor(it, p)
            if config.stop_on_fopt and vals.get("fidelity", 0.0) >= config.f_opt:
                break
        if val <= config.tol_loss:
            break
        if config.patience:
            if val < best_loss * (1 - 1e-9):
                best_loss, stall = val, 0
            else:
                stall += 1
                if stall >= config.patience:
                    break
        gv = np.where(keep, g.to_flat(), 0.0)
        if not np.all(np.isfinite(gv)):
            raise NonFiniteError(f"non-finite gradient at iteration {it}")
        # halve the step whenever the 100-iteration mean loss rises
        window.append(val)
        if len(window) == 100:
            mean = float(np.mean(window))
            if mean > best_window * (1 + 1e-12):
                scale *= 0.5
                log.debug("loss rose over a 100-step window; step scale now %g", scale)
            best_window = min(best_window, mean)
            window = []
        if adam is not None:
            base = lr
            if config.lr_final is not None and max_iters > 1:
                base = lr * (config.lr_final / lr) ** (it / (max_iters - 1))
            adam.lr = base * scale
            x = x - adam.step(gv)
        else:
            x = x - lr * scale * gv
        x = np.where(keep, x, 0.0)
    final = params.from_flat(x)
    last = it + 1 if rep.iters else 0
    if not rep.monitor_iters or rep.monitor_iters[-1] != rep.iters[-1]:
        vals = monitor(rep.iters[-1] if rep.iters else 0, final)
    else:
        vals = evaluate(ansatz, final, state, config.monitor)
    rep.params = final
    rep.final_fidelity = vals.get("fidelity", float("nan"))
    rep.final_trace_distance = vals.get("trace_distance", float("nan"))
    rep.final_qre = vals.get("qre", float("nan"))
    rep.iterations = last
    rep.learning_rate = lr * scale
    rep.converged = rep.best_fidelity >= config.f_opt
    rep.elapsed = time.perf_counter() - t0
    return rep


# ---------------------------------------------------------------------------
# learner construction, classification and sweeps


def pure_ket(target, tol=1e-10):
    """Leading eigenvector when ``target`` is (numerically) rank one, else ``None``.

    A 1-D array is returned normalised as it stands.
    """
    if not isinstance(target, DensityMatrix) and np.ndim(target) == 1:
        t = np.asarray(target, dtype=complex)
        return t / np.linalg.norm(t)
    w, v = np.linalg.eigh(as_matrix(target))
    if w[-2] > tol * max(w[-1], 1e-300):
        return None
    ket = v[:, -1]
    # fix the global phase so the largest entry is real and positive
    k = int(np.argmax(np.abs(ket)))
    return ket * (abs(ket[k]) / ket[k])


def target_dims(target, dims=None):
    if dims is not None:
        return tuple(int(d) for d in dims)
    if isinstance(target, DensityMatrix):
        return target.dims
    raise ValueError("dims are required for raw array targets")


def learner_for(target, K, n_h=10, n_m=10, family=None, encoding=None, dims=None, mixed=None):
    """Build the K-masked ansatz used for ``target`` and the target it should see.

    Rank-one targets get a pure ``pure_complex`` network (unless ``mixed`` is
    true); mixed targets get ``classical_mixer`` under full separability and a
    masked ``vec_mixed`` network otherwise. ``family`` overrides the choice.
    Returns ``(ansatz, learner_target)``.
    """
    from .separability import mask_for, validate

    dims = target_dims(target, dims)
    if len(set(dims)) != 1:
        raise BadParamError(f"learners need equal local dimensions, got {dims}")
    n, d = len(dims), dims[0]
    if K.n != n:
        raise InconsistentPartitionsError(f"partition over {K.n} qudits, target has {n}")
    bad = validate(K)
    if bad:
        raise InconsistentPartitionsError("; ".join(str(v) for v in bad))
    ket = pure_ket(target) if mixed is not True else None
    if family is None:
        if ket is not None:
            family = "pure_complex"
        elif K.is_fully_separable():
            family = "classical_mixer"
        else:
            family = "vec_mixed"
    if family not in FAMILIES:
        raise ConfigError(f"unknown ansatz family {family!r}")
    fam = FAMILIES[family]
    if encoding is not None:
        enc = encoding
    else:
        # mixed learners optimise far more reliably with one-hot qubits
        enc = QuditEncoding("onehot", d) if fam.MIXED else QuditEncoding.default(d)
    if family == "classical_mixer":
        if not (K.is_fully_separable() or K.is_free()):
            # the mixer has no hidden pure units, so it is only ever fully separable
            raise InconsistentPartitionsError("classical_mixer only represents full separability")
        a = Ansatz(family, n, d, 0, n_m, enc)
    else:
        mask = mask_for(K, enc, n_h)
        a = Ansatz(family, n, d, n_h, n_m if fam.MIXED else 0, enc, mask)
    if a.mixed:
        learner_target = target if isinstance(target, DensityMatrix) else _as_state(target, a)
    else:
        if ket is None:
            raise BadParamError(f"pure family {family!r} needs a rank-one target")
        learner_target = ket
    return a, learner_target


def best_of(reports, key="fidelity"):
    if key == "fidelity":
        return max(reports, key=lambda r: r.best_fidelity)
    return min(reports, key=lambda r: r.best_qre)


def train_restarts(ansatz, target, config: LearnConfig, stop_on_success=False, jobs=1):
    """Independent runs with seeds ``config.seed + r``; returns every report."""
    from .parallel import run_jobs

    seeds = [config.seed + r for r in range(config.restarts)]
    if stop_on_success or jobs <= 1:
        out = []
        for s in seeds:
            rep = train(ansatz, target, config, seed=s)
            out.append(rep)
            if stop_on_success and rep.converged:
                break
        return out
    return run_jobs(_train_task, [(ansatz, target, config, s) for s in seeds], jobs)


def _train_task(args):
    ansatz, target, config, s = args
    return train(ansatz, target, config, seed=s)


@dataclass
class Classification:
    verdict: str
    free_fidelity: float
    masked_fidelity: float
    f_opt: float
    partition: str
    free_runs: int
    masked_runs: int
    free_report: object = None
    masked_report: object = None

    @property
    def margin(self) -> float:
        """Masked-learner best fidelity minus F_opt (negative when it falls short)."""
        return self.masked_fidelity - self.f_opt

    @property
    def exit_code(self) -> int:
        return 2 if self.verdict == INCONCLUSIVE else 0

    def to_json(self):
        return {
            "verdict": self.verdict,
            "partition": self.partition,
            "f_opt": self.f_opt,
            "free_fidelity": self.free_fidelity,
            "masked_fidelity": self.masked_fidelity,
            "margin": self.margin,
            "free_runs": self.free_runs,
            "masked_runs": self.masked_runs,
        }


def classify(target, K, config: LearnConfig = None, n_h=10, n_m=10, dims=None, jobs=1) -> Classification:
    """Decide whether ``target`` is K-separable by comparing free and K-masked learners.

    Each learner gets up to ``config.restarts`` seeds and stops at the first
    run that reaches F_opt. The free learner failing makes the verdict
    INCONCLUSIVE regardless of the masked result.
    """
    from dataclasses import replace
    from .separability import free as free_partition

    config = LearnConfig() if config is None else config
    cfg = replace(config, stop_on_fopt=True, monitor=tuple(set(config.monitor) | {"fidelity"}))
    dims = target_dims(target, dims)
    fa, ft = learner_for(target, free_partition(len(dims)), n_h, n_m, config.family, dims=dims)
    free_runs = train_restarts(fa, ft, cfg, stop_on_success=True)
    free_best = best_of(free_runs)
    ma, mt = learner_for(target, K, n_h, n_m, config.family, dims=dims)
    masked_runs = train_restarts(ma, mt, cfg, stop_on_success=True)
    masked_best = best_of(masked_runs)
    if free_best.best_fidelity < cfg.f_opt:
        verdict = INCONCLUSIVE
    elif masked_best.best_fidelity >= cfg.f_opt:
        verdict = K_SEPARABLE
    else:
        verdict = ENTANGLED_BEYOND_K
    return Classification(verdict, free_best.best_fidelity, masked_best.best_fidelity, cfg.f_opt,
                          str(K), len(free_runs), len(masked_runs), free_best, masked_best)


def warm_start_sweep(targets, K, config: LearnConfig = None, n_h=10, n_m=10, dims=None,
                     warm_iters=None, family=None):
    """Train along an ordered family, seeding each learner with the previous one.

    The first learner starts from the seeded Gaussian initialisation with the
    full ``config.max_iters``; later ones get ``warm_iters`` (default the same).
    Returns the list of reports.
    """
    config = LearnConfig() if config is None else config
    family = config.family if family is None else family
    reports, prev = [], None
    for k, t in enumerate(targets):
        a, lt = learner_for(t, K, n_h, n_m, family, dims=dims)
        if prev is None or prev.ansatz.kind != a.kind:
            rep = train(a, lt, config)
        else:
            iters = config.max_iters if warm_iters is None else warm_iters
            rep = train(a, lt, config, init=prev.params, max_iters=iters)
        reports.append(rep)
        prev = rep
    return reports
