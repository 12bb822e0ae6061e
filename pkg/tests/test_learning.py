import csv
import json

import numpy as np
import pytest

from oracles import product_overlap
from snns import learning as ln
from snns import states
from snns.ansatz import FAMILIES, Ansatz
from snns.errors import InconsistentPartitionsError, ZeroNormError
from snns.learning import LearnConfig, TargetDecomposition
from snns.qmath import DensityMatrix, random_density_matrix
from snns.separability import PartitionSet, free, mask_for

FAST = dict(max_iters=3000, restarts=2, stop_on_fopt=True)


def rel_err(g, fd):
    return np.linalg.norm(g - fd) / max(np.linalg.norm(fd), 1e-12)


def random_instance(kind, rng, n=2, d=2, n_h=2, n_m=2, mixed_target=True):
    ans = Ansatz(kind, n, d, n_h=n_h, n_m=n_m)
    p = ans.init_params(rng, scale=0.4)
    if ans.mixed:
        target = DensityMatrix.from_array(random_density_matrix(ans.dim, rng), ans.dims, check=False)
    else:
        target = rng.normal(size=ans.dim) + 1j * rng.normal(size=ans.dim)
    return ans, p, target


def test_loss_examples(rng):
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    assert ln.loss_from_vectors(v, v) < 1e-14
    assert ln.loss_from_vectors(7 * v, v) < 1e-14
    assert ln.loss_from_vectors([1, 0], [0, 1]) == np.inf
    with pytest.raises(ZeroNormError):
        ln.loss_from_vectors([0, 0], [0, 1])


def test_loss_is_minus_log_root_fidelity_for_pure(rng):
    a = rng.normal(size=4) + 1j * rng.normal(size=4)
    b = rng.normal(size=4) + 1j * rng.normal(size=4)
    f = abs(np.vdot(a, b)) / (np.linalg.norm(a) * np.linalg.norm(b))
    assert abs(ln.loss_from_vectors(a, b) + np.log(f)) < 1e-13


def test_target_decomposition(rng):
    chi = rng.normal(size=6) + 1j * rng.normal(size=6)
    chi[2] = 0
    dec = TargetDecomposition.from_vector(chi)
    assert (dec.lam >= 0).all()
    assert np.abs(np.abs(dec.xi) - 1).max() < 1e-14
    assert np.abs(dec.vector() - chi).max() < 1e-14


@pytest.mark.parametrize("kind", sorted(FAMILIES))
def test_gradient_matches_finite_differences(kind, rng):
    for _ in range(3):
        ans, p, target = random_instance(kind, rng)
        g, val = ln.loss_and_grad(ans, p, TargetDecomposition.from_target(target))
        fd = ln.finite_difference_grad(ans, p, target)
        assert abs(val - ln.loss(ans, p, target)) < 1e-12
        assert rel_err(g.to_flat(), fd) <= 1e-6


@pytest.mark.parametrize("kind", ["amp_phase", "vec_mixed"])
def test_gradient_single_qubit(kind, rng):
    ans, p, target = random_instance(kind, rng, n=1)
    g, _ = ln.loss_and_grad(ans, p, TargetDecomposition.from_target(target))
    assert rel_err(g.to_flat(), ln.finite_difference_grad(ans, p, target)) <= 1e-6


def test_gradient_onehot_qutrit(rng):
    ans, p, target = random_instance("vec_mixed", rng, n=2, d=3)
    g, _ = ln.loss_and_grad(ans, p, TargetDecomposition.from_target(target))
    assert rel_err(g.to_flat(), ln.finite_difference_grad(ans, p, target)) <= 1e-6


@pytest.mark.parametrize("kind", sorted(FAMILIES))
def test_gradient_zero_at_optimum(kind, rng):
    ans = Ansatz(kind, 2, 2, n_h=2, n_m=2)
    p = ans.init_params(rng, scale=0.4)
    target = ans.state(p)
    g, val = ln.loss_and_grad(ans, p, TargetDecomposition.from_target(target))
    assert val < 1e-12
    assert np.abs(g.to_flat()).max() < 1e-9


def test_config_validation():
    with pytest.raises(ValueError):
        LearnConfig(learning_rate=0)
    with pytest.raises(ValueError):
        LearnConfig(eps=0)
    with pytest.raises(ValueError):
        LearnConfig(optimizer="lbfgs")
    assert LearnConfig().f_opt == 1 - 1e-4


def test_train_bell_free():
    a, t = ln.learner_for(states.phi_plus(2), free(2))
    rep = ln.train(a, t, LearnConfig(max_iters=3000))
    assert rep.final_fidelity >= 1 - 1e-4
    assert len(rep.iters) == len(rep.loss) == rep.iterations
    assert rep.best_qre <= rep.final_qre + 1e-15


def test_train_product_fully_separable():
    ket = states.product_ket([[1, 1j], [np.cos(0.3), np.sin(0.3)]])
    a, t = ln.learner_for(DensityMatrix.from_array(np.outer(ket, ket.conj()), (2, 2)), PartitionSet.parse("1|2"))
    rep = ln.train(a, t, LearnConfig(max_iters=3000))
    assert rep.final_fidelity >= 1 - 1e-4


def test_train_bell_separable_gap():
    bell = states.phi_plus(2)
    bound = product_overlap(states.phi_plus_ket(2), 2)
    assert abs(bound - 1 / np.sqrt(2)) < 1e-6
    a, t = ln.learner_for(bell, PartitionSet.parse("1|2"))
    masked = ln.train(a, t, LearnConfig(max_iters=2000))
    a, t = ln.learner_for(bell, free(2))
    unmasked = ln.train(a, t, LearnConfig(max_iters=2000))
    assert masked.best_fidelity <= bound + 1e-9
    assert unmasked.best_fidelity - masked.best_fidelity > 0.05


@pytest.mark.parametrize("kind", ["pure_complex", "mixed_ndm", "vec_mixed"])
def test_mask_preserved(kind, rng):
    ans = Ansatz(kind, 2, 2, n_h=4, n_m=2)
    mask = mask_for(PartitionSet.parse("1|2"), ans.encoding, 4)
    ans = Ansatz(kind, 2, 2, n_h=4, n_m=2, mask=mask)
    target = states.werner(-0.5, 2) if ans.mixed else states.phi_plus_ket(2)
    rep = ln.train(ans, target, LearnConfig(max_iters=300, monitor=()))
    for name in rep.params.MASKED:
        assert (getattr(rep.params, name)[~mask] == 0).all()


def test_deterministic_replay():
    a, t = ln.learner_for(states.werner(-0.5, 2), free(2), 4, 4)
    cfg = LearnConfig(max_iters=200, seed=7)
    r1, r2 = ln.train(a, t, cfg), ln.train(a, t, cfg)
    j1, j2 = r1.to_json(), r2.to_json()
    # wall-clock time is the only field allowed to differ
    j1.pop("elapsed_s"), j2.pop("elapsed_s")
    assert json.dumps(j1) == json.dumps(j2)
    assert np.array_equal(r1.params.to_flat(), r2.params.to_flat())
    r3 = ln.train(a, t, LearnConfig(max_iters=200, seed=8))
    assert r3.loss != r1.loss


def test_scale_invariance_of_loss(rng):
    a, _ = ln.learner_for(states.werner(-0.5, 2), free(2), 2, 2)
    p = a.init_params(rng, 0.3)
    rho = random_density_matrix(4, rng)
    assert abs(ln.loss(a, p, rho) - ln.loss(a, p, 5 * rho)) < 1e-12


def test_series_csv(tmp_path):
    a, t = ln.learner_for(states.werner(-0.5, 2), free(2), 2, 2)
    rep = ln.train(a, t, LearnConfig(max_iters=60, monitor_every=20))
    path = tmp_path / "s.csv"
    rep.write_csv(path)
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == list(ln.SERIES_COLUMNS)
    assert len(rows) == 61
    assert rows[1][2] != "" and rows[2][2] == ""


def test_learner_for_choices():
    a, t = ln.learner_for(states.ghz(2, 3), PartitionSet.parse("1,2|2,3"))
    assert a.kind == "pure_complex" and t.ndim == 1
    a, _ = ln.learner_for(states.noisy_w(0.3), PartitionSet.parse("1|2|3"))
    assert a.kind == "classical_mixer"
    a, _ = ln.learner_for(states.noisy_w(0.3), PartitionSet.parse("1,2|3"))
    assert a.kind == "vec_mixed" and not a.mask.all()
    with pytest.raises(InconsistentPartitionsError):
        ln.learner_for(states.phi_plus(2), PartitionSet.parse("1|2|3"))
    with pytest.raises(InconsistentPartitionsError):
        ln.learner_for(states.noisy_w(0.3), PartitionSet.parse("1,2|2,3", 3, "disjoint"))


def test_classify_bell_entangled():
    res = ln.classify(states.phi_plus(2), PartitionSet.parse("1|2"), LearnConfig(**FAST))
    assert res.verdict == ln.ENTANGLED_BEYOND_K
    assert res.margin < 0 and res.exit_code == 0


def test_classify_product_separable():
    ket = states.product_ket([[1, 2], [1, -1j]])
    rho = DensityMatrix.from_array(np.outer(ket, ket.conj()), (2, 2))
    res = ln.classify(rho, PartitionSet.parse("1|2"), LearnConfig(**FAST))
    assert res.verdict == ln.K_SEPARABLE


def test_classify_inconclusive_when_free_fails():
    res = ln.classify(states.werner(-0.5, 2), PartitionSet.parse("1|2"),
                      LearnConfig(max_iters=5, restarts=1), n_h=2, n_m=2)
    assert res.verdict == ln.INCONCLUSIVE and res.exit_code == 2


@pytest.mark.slow
def test_classify_bound_entangled():
    from snns.qmath import is_ppt
    rho = states.bound_entangled(3.9)
    assert is_ppt(rho)
    res = ln.classify(rho, PartitionSet.parse("1|2"),
                      LearnConfig(max_iters=20000, learning_rate=0.02, restarts=2))
    assert res.verdict == ln.ENTANGLED_BEYOND_K


def test_warm_start_constant_family():
    rho = states.depolarise(states.phi_plus(2), 0.5)
    reps = ln.warm_start_sweep([rho] * 4, free(2), LearnConfig(max_iters=3000, stop_on_fopt=True), 4, 4)
    assert reps[0].best_fidelity >= 1 - 1e-4
    assert all(r.iterations <= 10 for r in reps[1:])


def test_warm_start_saves_iterations():
    targets = [states.depolarise(states.phi_plus(2), p) for p in np.linspace(0, 1, 21)]
    cfg = LearnConfig(max_iters=3000, stop_on_fopt=True, monitor=("fidelity",))
    warm = ln.warm_start_sweep(targets, free(2), cfg, 4, 4, family="vec_mixed")
    cold = []
    for t in targets:
        a, lt = ln.learner_for(t, free(2), 4, 4, "vec_mixed")
        cold.append(ln.train(a, lt, cfg))
    total_warm = sum(r.iterations for r in warm)
    assert total_warm < 21 * cfg.max_iters
    assert total_warm < sum(r.iterations for r in cold)
