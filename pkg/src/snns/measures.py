"""Entanglement measures estimated by optimising K-separable networks.

Distance-type measures (trace distance, Bures, relative entropy) are upper
bounds: any learner state is a valid candidate in the constrained minimum.
The geometric measure is reported as the best fidelity found, which lower
bounds the true maximum.
"""

import csv
from dataclasses import dataclass, field, replace

import numpy as np

from .ansatz import Ansatz, MixedNDMParams, QuditEncoding, VecMixedParams
from .errors import BadParamError, ConfigError, InconsistentPartitionsError, InfiniteQREError
from .learning import LearnConfig, learner_for, pure_ket, target_dims, train, train_restarts
from .parallel import run_jobs
from .qmath import DensityMatrix
from .separability import HiddenPartition, PartitionSet, build_mask, fully_separable, mask_for, presets
from .states import ChannelSpec, choi

GME = "GME"
E_C1 = "E_C1"
E_B = "E_B"
E_R = "E_R"

UPPER_BOUND = "UPPER_BOUND"
LOWER_BOUND = "LOWER_BOUND"

SWEEP_COLUMNS = ("sweep_param", "measure", "partition", "value", "restarts", "converged")


@dataclass
class MeasureEstimate:
    measure: str
    partition: str
    value: float
    restarts: int = 0
    best_seed: int = -1
    converged: bool = False
    bound: str = UPPER_BOUND
    diagnostics: dict = field(default_factory=dict)
    report: object = None

    def __post_init__(self):
        if self.value < 0:
            self.value = 0.0

    def to_json(self):
        return {
            "measure": self.measure,
            "partition": self.partition,
            "value": float(self.value),
            "bound": self.bound,
            "restarts": int(self.restarts),
            "best_seed": int(self.best_seed),
            "converged": bool(self.converged),
            "diagnostics": _plain(self.diagnostics),
        }


def _plain(obj):
    """Numpy scalars and arrays inside ``obj`` as built-in Python values."""
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, np.generic):
        return obj.item()
    return obj


def _hidden_support(ansatz):
    """Qudit labels (1-based) each hidden unit is allowed to see."""
    w = ansatz.encoding.width
    allowed = ansatz.mask if ansatz.mask is not None else np.ones((ansatz.n_visible_units, ansatz.n_h), bool)
    return [frozenset(int(i) // w + 1 for i in np.flatnonzero(allowed[:, j])) for j in range(ansatz.n_h)]


def nest_learner(ansatz, params, K: PartitionSet, n_h=10, rng=None, noise=1e-3):
    """Re-express a learner as a K-separable learner representing the same state.

    ``K`` must contain the source learner's separability (every hidden unit's
    support lies inside some block of ``K``). A ``classical_mixer`` stays one
    under full separability and otherwise becomes a ``vec_mixed`` network with
    the same visible and mixing layers and ``n_h`` hidden units of weight
    ``noise`` (exactly zero hidden weights are a stationary point). A masked
    ``vec_mixed`` or ``mixed_ndm`` network keeps its hidden units, each
    regrouped into the first block of ``K`` covering its support. Returns
    ``(ansatz, params)``.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    enc, n, d = ansatz.encoding, ansatz.n, ansatz.d
    if ansatz.kind == "classical_mixer":
        if K.is_fully_separable():
            return ansatz, params.copy()
        mask = mask_for(K, enc, n_h)
        dst = Ansatz("vec_mixed", n, d, n_h, ansatz.n_m, enc, mask)
        nv = dst.n_visible_units
        p = VecMixedParams(np.real(params.a).copy(), np.zeros(n_h), rng.normal(0, noise, (nv, n_h)),
                           np.imag(params.a).copy(), np.zeros(n_h), rng.normal(0, noise, (nv, n_h)),
                           np.real(params.c).copy(), np.real(params.U).copy(), np.imag(params.U).copy())
        return dst, p.apply_mask(mask)
    if ansatz.kind not in ("vec_mixed", "mixed_ndm"):
        raise ConfigError(f"cannot nest a {ansatz.kind} learner")
    support = _hidden_support(ansatz)
    order, sizes = [], []
    for block in K.blocks:
        units = [j for j, sup in enumerate(support) if j not in order and sup <= set(block)]
        order.extend(units)
        sizes.append(len(units))
    if len(order) != ansatz.n_h:
        raise InconsistentPartitionsError(f"{K} does not contain the source learner's separability")
    H = HiddenPartition.proportional(K, ansatz.n_h, sizes)
    mask = build_mask(K, H, enc, n, ansatz.n_h)
    dst = Ansatz(ansatz.kind, n, d, ansatz.n_h, ansatz.n_m, enc, mask)
    o = np.array(order, dtype=int)
    if ansatz.kind == "mixed_ndm":
        return dst, MixedNDMParams(params.c.copy(), params.U.copy(), params.a.copy(), params.b[o],
                                   params.W[:, o])
    p = VecMixedParams(params.amp_a.copy(), params.amp_b[o], params.amp_W[:, o],
                       params.ph_a.copy(), params.ph_b[o], params.ph_W[:, o],
                       params.mix_c.copy(), params.mix_R.copy(), params.mix_I.copy())
    return dst, p


def embed_pure(ansatz, params, n_m=10, encoding=None, rng=None, noise=1e-3):
    """Write a ``pure_complex`` learner as a ``mixed_ndm`` learner of (almost) the same state.

    The pure layer is copied, translated to ``encoding`` (one-hot by default)
    through the linear map between the two visible alphabets, and keeps its
    mask. The mixing layer starts at ``c = 0`` with weights of size ``noise``,
    which gives the state a small full-rank admixture.
    """
    if ansatz.kind != "pure_complex":
        raise ConfigError(f"cannot embed a {ansatz.kind} learner")
    rng = np.random.default_rng(0) if rng is None else rng
    src, d, n = ansatz.encoding, ansatz.d, ansatz.n
    enc = QuditEncoding("onehot", d) if encoding is None else encoding
    # rows: qudit level in the new alphabet, columns: units in the old one
    T = np.array([src.encode(l) for l in range(d)])
    E = np.array([enc.encode(l) for l in range(d)])
    M = np.linalg.pinv(E) @ T
    lift = np.kron(np.eye(n), M)
    old_visible = src.visible_matrix(n)
    if np.abs(enc.visible_matrix(n) @ lift - old_visible).max() > 1e-12:
        raise ConfigError(f"{src.kind} units are not linear in {enc.kind} units")
    mask = None
    if ansatz.mask is not None:
        rows = lift != 0
        mask = (rows.astype(int) @ ansatz.mask.astype(int)) > 0
    dst = Ansatz("mixed_ndm", n, d, ansatz.n_h, n_m, enc, mask)
    nv = dst.n_visible_units
    U = rng.normal(0, noise, (nv, n_m)) + 1j * rng.normal(0, noise, (nv, n_m))
    p = MixedNDMParams(np.zeros(n_m), U, lift @ params.a, params.b.copy(), lift @ params.W)
    return dst, p


def pure_seed(target, K, config, n_h=10, n_m=10, dims=None):
    """Embedded pure K-separable learner for a rank-one ``target`` it reconstructs.

    Returns ``None`` when the target is mixed or no pure learner reaches F_opt.
    The relative entropy to the embedded state is finite only when the pure
    error is well below the mixing admixture, hence the full training budget.
    """
    ket = pure_ket(target)
    if ket is None:
        return None
    a, t = learner_for(ket, K, n_h, 0, "pure_complex", dims=target_dims(target, dims))
    # train to the full budget: the embedded state needs the pure error far below eps
    cfg = replace(config, stop_on_fopt=False, monitor=("fidelity",))
    best = max(train_restarts(a, t, cfg, stop_on_success=True), key=lambda r: r.best_fidelity)
    if best.best_fidelity < config.f_opt:
        return None
    return embed_pure(a, best.best_fidelity_params, n_m)


def _config(config):
    return LearnConfig() if config is None else config


def _run(ansatz, target, config, jobs=1, extra=()):
    """Cold restarts with seeds ``config.seed + r`` plus warm runs ``extra``.

    ``extra`` holds ``(ansatz, init_params)`` pairs; they get the seeds after
    the cold ones. Reports come back cold runs first.
    """
    seeds = [config.seed + r for r in range(config.restarts)]
    tasks = [(ansatz, target, config, s, None) for s in seeds]
    for k, (wa, wp) in enumerate(extra):
        tasks.append((wa, target, config, config.seed + config.restarts + k, wp))
    return run_jobs(_task, tasks, jobs)


def _task(args):
    ansatz, target, config, seed, init = args
    return train(ansatz, target, config, init=init, seed=seed)


def settled(values, tol=1e-4):
    """True when the last monitored value is within ``tol`` of the trajectory optimum."""
    vals = [v for v in values if v is not None and np.isfinite(v)]
    return bool(vals) and abs(vals[-1] - min(vals)) <= tol


def warm_source(est):
    """``(ansatz, params)`` of the lowest-QRE state behind an REE estimate."""
    rep = est.report
    return rep.ansatz, rep.best_qre_params


def gme(target, K: PartitionSet, config: LearnConfig = None, n_h=10, dims=None, jobs=1) -> MeasureEstimate:
    """Largest fidelity between a pure target and pure K-separable network states."""
    config = _config(config)
    ket = pure_ket(target)
    if ket is None:
        raise BadParamError("the geometric measure needs a pure target")
    dims = target_dims(target, dims)
    family = config.family if config.family in ("pure_complex", "amp_phase") else "pure_complex"
    a, t = learner_for(ket, K, n_h, 0, family, dims=dims)
    cfg = replace(config, monitor=("fidelity",))
    reps = _run(a, t, cfg, jobs=jobs)
    best = max(reps, key=lambda r: r.best_fidelity)
    return MeasureEstimate(GME, str(K), best.best_fidelity, len(reps), best.seed,
                           settled([-f for f in best.fidelity]),
                           LOWER_BOUND, {"ansatz": a.kind, "best_iter": best.best_fidelity_iter,
                                         "fidelities": [r.best_fidelity for r in reps]}, best)


def distance_measure(target, K: PartitionSet, metric="trace", config: LearnConfig = None, n_h=10,
                     n_m=10, dims=None, jobs=1, stop_below=None) -> MeasureEstimate:
    """Trace-distance or Bures (1 - F^2) distance to the K-separable set.

    The learner is trained on fidelity; the distance is minimised over the
    monitored trajectory of every restart. With ``stop_below`` the restarts
    run one at a time and stop once the bound drops to that value.
    """
    if metric not in ("trace", "bures"):
        raise ConfigError(f"unknown metric {metric!r}")
    config = _config(config)
    dims = target_dims(target, dims)
    a, t = learner_for(target, K, n_h, n_m, config.family, dims=dims, mixed=True)
    cfg = replace(config, monitor=("fidelity", "trace_distance"))
    if stop_below is None:
        reps = _run(a, t, cfg, jobs=jobs)
    else:
        reps = []
        for r in range(config.restarts):
            reps.append(train(a, t, cfg, seed=config.seed + r))
            if _distance(reps[-1], metric) <= stop_below:
                break
    vals = [_distance(r, metric) for r in reps]
    name = E_C1 if metric == "trace" else E_B
    k = int(np.argmin(vals))
    diag = {"ansatz": a.kind, "per_run": vals,
            "best_fidelities": [r.best_fidelity for r in reps]}
    series = reps[k].trace_distance if metric == "trace" else [1 - f**2 for f in reps[k].fidelity]
    return MeasureEstimate(name, str(K), float(vals[k]), len(reps), reps[k].seed, settled(series),
                           UPPER_BOUND, diag, reps[k])


def _distance(rep, metric):
    if metric == "trace":
        return float(min(rep.trace_distance))
    return float(1.0 - rep.best_fidelity**2)


def ree_upper(target, K: PartitionSet, config: LearnConfig = None, n_h=10, n_m=10, dims=None,
              warm=(), n_shots=1, jobs=1) -> MeasureEstimate:
    """Relative entropy of entanglement bound min S(target || learner) over K-separable learners.

    Every restart is monitored and the minimum over all trajectories is
    reported. ``warm`` holds ``(ansatz, params)`` learners whose separability
    ``K`` contains (a finer partition, or the same one at a neighbouring sweep
    point); each is re-expressed under ``K`` and trained as an extra run, so
    the estimate never exceeds their QRE.

    ``n_shots`` reserves the regularised n-copy quantity
    lim (1/n) E_R(target^{(x)n}); only the single-shot value is computed.
    """
    if n_shots != 1:
        raise ConfigError("only the single-shot relative entropy of entanglement is implemented")
    config = _config(config)
    dims = target_dims(target, dims)
    a, t = learner_for(target, K, n_h, n_m, config.family, dims=dims, mixed=True)
    cfg = replace(config, monitor=tuple(sorted(set(config.monitor) | {"qre", "fidelity"})))
    extra = [nest_learner(wa, wp, K, n_h) for wa, wp in warm if wp is not None]
    if a.mixed and not K.is_fully_separable():
        seed = pure_seed(target, K, config, n_h, n_m, dims)
        if seed is not None:
            extra.append(seed)
    reps = _run(a, t, cfg, jobs, extra)
    vals = [r.best_qre for r in reps]
    if not np.any(np.isfinite(vals)):
        raise InfiniteQREError(f"every learner state misses the support of the target under {K}")
    k = int(np.argmin(vals))
    best = reps[k]
    diag = {
        "ansatz": best.ansatz.kind,
        "best_iter": best.best_qre_iter,
        "per_run": [v if np.isfinite(v) else None for v in vals],
        "warm_runs": len(extra),
        "qre_clip": best.qre_clip,
        "qre_fidelity_mismatch": best.qre_fidelity_mismatch,
    }
    return MeasureEstimate(E_R, str(K), float(vals[k]), len(reps), best.seed, settled(best.qre),
                           UPPER_BOUND, diag, best)


def _contains(coarse: PartitionSet, fine: PartitionSet) -> bool:
    return all(any(set(b) <= set(c) for c in coarse.blocks) for b in fine.blocks)


def ree_variants(target, config: LearnConfig = None, n_h=10, n_m=10, jobs=1, slack=1e-3, previous=None):
    """Full, biseparable and GHZ-type restricted REE bounds of a 3-qubit state.

    Degenerate partition families are handled by minimising over their
    members, each an independent optimisation. Finer optima seed the coarser
    partitions that contain them (full -> every biseparable member -> every
    GHZ-type member containing it); ``previous`` (an earlier result of this
    function, e.g. at a neighbouring noise level) seeds each partition too.

    Returns a dict with keys ``E_R``, ``E_R^Gen``, ``E_R^W``, ``members``
    (partition string -> estimate) and ``ordered``
    (E_R >= E_R^Gen - slack and E_R^Gen >= E_R^W - slack).
    """
    dims = target_dims(target)
    if dims != (2, 2, 2):
        raise BadParamError(f"variants are defined for three qubits, got dims {dims}")
    fam = presets(3)
    prev = {} if previous is None else previous["members"]

    def seeds(K, finer):
        out = [warm_source(e) for e in finer]
        if str(K) in prev:
            out.append(warm_source(prev[str(K)]))
        return out

    members = {}
    fs = fam["FS"]
    members[str(fs)] = ree_upper(target, fs, config, n_h, n_m, warm=seeds(fs, []), jobs=jobs)
    for K in fam["BS"]:
        members[str(K)] = ree_upper(target, K, config, n_h, n_m, warm=seeds(K, [members[str(fs)]]),
                                    jobs=jobs)
    for K in fam["GHZ"]:
        finer = [members[str(B)] for B in fam["BS"] if _contains(K, B)]
        members[str(K)] = ree_upper(target, K, config, n_h, n_m, warm=seeds(K, finer), jobs=jobs)

    def fold(label, family):
        ests = [members[str(K)] for K in family]
        best = min(ests, key=lambda e: e.value)
        return MeasureEstimate(label, best.partition, best.value, sum(e.restarts for e in ests),
                               best.best_seed, best.converged, UPPER_BOUND,
                               dict(best.diagnostics, members={e.partition: e.value for e in ests}),
                               best.report)

    full = members[str(fs)]
    gen = fold("E_R^Gen", fam["BS"])
    w = fold("E_R^W", fam["GHZ"])
    ordered = full.value >= gen.value - slack and gen.value >= w.value - slack
    return {"E_R": full, "E_R^Gen": gen, "E_R^W": w, "members": members, "ordered": ordered}


def capacity_bound(channel: ChannelSpec, config: LearnConfig = None, n_h=10, n_m=10, jobs=1,
                   warm=()) -> MeasureEstimate:
    """Two-way capacity upper bound: REE of the channel's Choi state across {1|2}."""
    est = ree_upper(choi(channel), fully_separable(2), config, n_h, n_m, warm=warm, jobs=jobs)
    est.diagnostics = dict(est.diagnostics, channel=channel.kind, d=channel.d, param=channel.param)
    return est


def write_sweep_csv(path, rows):
    """``rows`` are (sweep_param, MeasureEstimate) pairs."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(SWEEP_COLUMNS)
        for x, est in rows:
            w.writerow([repr(float(x)), est.measure, est.partition, repr(float(est.value)),
                        est.restarts, int(bool(est.converged))])
