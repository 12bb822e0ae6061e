from itertools import product

import numpy as np
import pytest

from snns import ansatz as az
from snns.ansatz import Ansatz, QuditEncoding
from snns.errors import BranchCutError, ShapeMismatchError


def hidden_sum_amplitude(a, b, W, s):
    """Explicit sum over hidden spins h in {-1,+1}^n_h."""
    total = 0.0
    for h in product((-1.0, 1.0), repeat=len(b)):
        h = np.array(h)
        total += np.exp(s @ a + h @ b + s @ W @ h)
    return total


def test_encoding_onehot_and_binary():
    assert list(QuditEncoding("onehot", 3).encode(2)) == [0, 0, 1]
    enc = QuditEncoding("binary", 4)
    assert enc.width == 2
    assert list(enc.encode(2)) == [1, -1]
    for s in range(4):
        assert enc.decode(enc.encode(s)) == s
    assert QuditEncoding.default(3).kind == "onehot"
    assert QuditEncoding.default(2).kind == "binary"
    with pytest.raises(ValueError):
        QuditEncoding("binary", 3)
    with pytest.raises(ValueError):
        enc.encode(4)


def test_visible_matrix_order():
    S = QuditEncoding("binary", 2).visible_matrix(2)
    assert S.tolist() == [[-1, -1], [-1, 1], [1, -1], [1, 1]]


def test_logcosh_stable():
    z = np.array([0.0, 3.0 + 0.2j, -800.0, 800.0 + 1j])
    ref = np.log(np.cosh(z[:2]))
    out = az.logcosh(z)
    assert np.abs(out[:2] - ref).max() < 1e-13
    assert np.isfinite(out).all()
    assert abs(out[2] - (800 - np.log(2))) < 1e-9


def test_pure_zeros_uniform():
    ans = Ansatz("pure_complex", 3, 2, n_h=4)
    v = az.eval_pure(ans.zeros(), ans.encoding)
    assert np.abs(v - 2.0**4).max() < 1e-12


def test_pure_matches_hidden_sum(rng):
    ans = Ansatz("pure_complex", 2, 2, n_h=3)
    p = ans.init_params(rng, scale=0.5)
    v = az.eval_pure(p, ans.encoding)
    for k, s in enumerate(ans.visible):
        assert abs(v[k] - hidden_sum_amplitude(p.a, p.b, p.W, s)) < 1e-12 * abs(v[k])


def test_amp_phase_modulus_and_phase(rng):
    ans = Ansatz("amp_phase", 2, 2, n_h=2)
    p = ans.init_params(rng, scale=0.4)
    v = az.eval_pure(p, ans.encoding)
    S = ans.visible
    amp = np.array([hidden_sum_amplitude(p.a, p.b, p.W, s) for s in S])
    ph = np.array([hidden_sum_amplitude(p.c, p.d, p.U, s) for s in S])
    assert np.abs(np.abs(v) - amp).max() < 1e-12 * amp.max()
    ratio = v / amp
    assert np.abs(ratio - np.exp(1j * np.log(ph))).max() < 1e-12


def test_ndm_zeros_all_ones():
    ans = Ansatz("mixed_ndm", 2, 2, n_h=2, n_m=2)
    rho = az.eval_mixed_ndm(ans.zeros(), ans.encoding)
    assert np.abs(rho.mat - np.ones((4, 4)) / 4).max() < 1e-14


def test_ndm_without_mixing_is_pure_rbm(rng):
    ans = Ansatz("mixed_ndm", 2, 2, n_h=3, n_m=0)
    p = ans.init_params(rng, scale=0.5)
    rho = az.eval_mixed_ndm(p, ans.encoding).mat
    pure = Ansatz("pure_complex", 2, 2, n_h=3)
    psi = az.eval_pure(pure.family(p.a, p.b, p.W), pure.encoding)
    psi = psi / np.linalg.norm(psi)
    assert np.abs(rho - np.outer(psi, psi.conj())).max() < 1e-12
    assert np.linalg.matrix_rank(rho, tol=1e-10) == 1


def test_ndm_positive(rng):
    ans = Ansatz("mixed_ndm", 2, 3, n_h=3, n_m=3)
    for _ in range(20):
        rho = az.eval_mixed_ndm(ans.init_params(rng, scale=0.7), ans.encoding).mat
        assert np.abs(rho - rho.conj().T).max() < 1e-12
        assert np.linalg.eigvalsh(rho)[0] >= -1e-9 * np.trace(rho).real


def test_vec_mixed_hermitian(rng):
    ans = Ansatz("vec_mixed", 2, 2, n_h=2, n_m=3)
    for _ in range(20):
        p = ans.init_params(rng, scale=0.5)
        m = az.eval_vec_mixed(p, ans.encoding).reshape(4, 4)
        assert np.abs(m - m.conj().T).max() < 1e-8 * np.abs(m).max()


def test_vec_mixed_without_mixing_is_pure(rng):
    ans = Ansatz("vec_mixed", 2, 2, n_h=2, n_m=0)
    p = ans.init_params(rng, scale=0.5)
    m = az.eval_vec_mixed(p, ans.encoding).reshape(4, 4)
    gamma, r, Phi, theta = az.vec_mixed_components(p, ans.encoding)
    assert np.abs(r - 1).max() < 1e-14
    assert np.abs(theta - 1).max() < 1e-14
    assert np.linalg.matrix_rank(m, tol=1e-10 * np.abs(m).max()) == 1


def test_vec_mixed_real_mixing_has_no_phase(rng):
    ans = Ansatz("vec_mixed", 2, 2, n_h=2, n_m=2)
    p = ans.init_params(rng, scale=0.5)
    p.mix_I[:] = 0.0
    *_, theta = az.vec_mixed_components(p, ans.encoding)
    assert np.abs(theta - 1).max() < 1e-14
    m = az.eval_vec_mixed(p, ans.encoding).reshape(4, 4)
    assert np.abs(np.diag(m).imag).max() < 1e-14


def test_vec_mixed_branch_cut():
    ans = Ansatz("vec_mixed", 1, 2, n_h=0, n_m=1)
    p = ans.zeros()
    # off-diagonal elements get mu + i psi = -+ i pi/2 when c = R = 0 and I = pi/4
    p.mix_I[:] = np.pi / 4
    with pytest.raises(BranchCutError):
        az.eval_vec_mixed(p, ans.encoding)


def test_classical_mixer_zeros_uniform_product():
    ans = Ansatz("classical_mixer", 2, 2, n_m=3)
    rho = az.eval_classical_mixer(ans.zeros(), ans.encoding)
    assert np.abs(rho.mat - np.ones((4, 4)) / 4).max() < 1e-14


def test_classical_mixer_is_ppt(rng):
    from snns.qmath import min_pt_eigenvalue
    ans = Ansatz("classical_mixer", 2, 2, n_m=4)
    for _ in range(50):
        rho = az.eval_classical_mixer(ans.init_params(rng, scale=1.0), ans.encoding)
        assert min_pt_eigenvalue(rho, 0) >= -1e-12


def test_shape_mismatch():
    ans = Ansatz("pure_complex", 2, 2, n_h=2)
    p = ans.zeros()
    with pytest.raises(ShapeMismatchError):
        az.eval_pure(p, ans.encoding, n=3)
    with pytest.raises(ShapeMismatchError):
        Ansatz("pure_complex", 2, 2, n_h=2, mask=np.ones((3, 2)))


def test_flat_roundtrip(rng):
    for kind in az.FAMILIES:
        ans = Ansatz(kind, 2, 3, n_h=2, n_m=2)
        p = ans.init_params(rng, scale=0.3)
        q = p.from_flat(p.to_flat())
        assert np.abs(q.to_flat() - p.to_flat()).max() == 0


def test_json_roundtrip(rng):
    import json
    for kind in az.FAMILIES:
        ans = Ansatz(kind, 2, 2, n_h=2, n_m=2, mask=None)
        p = ans.init_params(rng, scale=0.3)
        data = json.loads(json.dumps(ans.to_json(p)))
        ans2, p2 = Ansatz.from_json(data)
        assert ans2.kind == kind
        assert np.abs(p2.to_flat() - p.to_flat()).max() == 0


def test_state_normalised(rng):
    ans = Ansatz("vec_mixed", 2, 2, n_h=2, n_m=2)
    rho = ans.state(ans.init_params(rng, scale=0.3))
    assert abs(np.trace(rho.mat) - 1) < 1e-12
    pure = Ansatz("pure_complex", 2, 2, n_h=2)
    assert abs(np.linalg.norm(pure.state(pure.init_params(rng))) - 1) < 1e-12
