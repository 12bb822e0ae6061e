import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from snns import qmath
from snns.ansatz import Ansatz, QuditEncoding
from snns.learning import loss_from_vectors
from snns.separability import HiddenPartition, PartitionSet, mask_for, validate

seeds = st.integers(0, 2**32 - 1)
dims = st.integers(2, 6)


def rho_from(seed, n, rank=None):
    return qmath.random_density_matrix(n, np.random.default_rng(seed), rank)


@settings(max_examples=60, deadline=None)
@given(seeds, dims)
def test_fidelity_and_distance_ranges(seed, n):
    a, b = rho_from(seed, n), rho_from(seed + 1, n)
    f = qmath.bures_fidelity(a, b)
    t = qmath.trace_distance(a, b)
    assert 0 <= f <= 1 and 0 <= t <= 1
    assert abs(f - qmath.bures_fidelity(b, a)) < 1e-9
    assert 1 - f <= t + 1e-9 and t <= np.sqrt(max(1 - f * f, 0)) + 1e-8


@settings(max_examples=60, deadline=None)
@given(seeds, dims)
def test_qre_nonnegative_full_support(seed, n):
    a, b = rho_from(seed, n, rank=1), rho_from(seed + 7, n)
    assert qmath.qre(a, b) >= 0
    assert np.isfinite(qmath.qre(a, b))


@settings(max_examples=60, deadline=None)
@given(seeds, st.integers(2, 3), st.integers(2, 3))
def test_partial_transpose_keeps_trace_and_hermiticity(seed, da, db):
    rho = rho_from(seed, da * db)
    for k in (0, 1):
        pt = qmath.partial_transpose(rho, k, (da, db))
        assert abs(np.trace(pt) - np.trace(rho)) < 1e-15
        assert np.abs(pt - pt.conj().T).max() < 1e-15


@settings(max_examples=40, deadline=None)
@given(seeds, st.integers(1, 40), st.floats(1e-3, 1e3))
def test_eig_reconstruction(seed, n, scale):
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    h = g + g.conj().T
    h = scale * h / np.linalg.norm(h)
    spec = qmath.hermitian_eig(h)
    assert np.linalg.norm(spec.reconstruct() - h) <= 1e-9 * (1 + np.linalg.norm(h))
    assert (np.diff(spec.eigenvalues) >= 0).all()


@given(seeds, dims)
def test_vectorise_roundtrip(seed, n):
    m = rho_from(seed, n)
    assert np.abs(qmath.devectorise(qmath.vectorise(m), n) - m).max() == 0


@given(st.integers(2, 9), st.sampled_from(["binary", "onehot"]), st.data())
def test_encoding_roundtrip(d, kind, data):
    if kind == "binary" and d & (d - 1):
        d = 1 << (d - 1).bit_length()
    enc = QuditEncoding(kind, d)
    s = data.draw(st.integers(0, d - 1))
    g = enc.encode(s)
    assert len(g) == enc.width
    assert enc.decode(g) == s


def partitions(n):
    """Disjoint partitions of {1..n}: each qudit draws a block label."""
    def group(labels):
        blocks = {}
        for q, lab in enumerate(labels, start=1):
            blocks.setdefault(lab, []).append(q)
        return PartitionSet(tuple(tuple(b) for b in blocks.values()), n)
    return st.lists(st.integers(0, n - 1), min_size=n, max_size=n).map(group)


@given(partitions(4), st.integers(4, 12))
def test_disjoint_partitions_validate_and_allocate(K, n_h):
    assert validate(K) == []
    H = HiddenPartition.proportional(K, n_h)
    assert sorted(j for b in H.blocks for j in b) == list(range(n_h))


@settings(max_examples=40, deadline=None)
@given(seeds, partitions(3), st.sampled_from(["binary", "onehot"]))
def test_masked_mixed_network_is_a_state(seed, K, kind):
    enc = QuditEncoding(kind, 2)
    ans = Ansatz("mixed_ndm", 3, 2, n_h=6, n_m=2, encoding=enc, mask=mask_for(K, enc, 6))
    rho = ans.state(ans.init_params(np.random.default_rng(seed), 0.8)).mat
    assert np.abs(rho - rho.conj().T).max() < 1e-12
    assert np.linalg.eigvalsh(rho)[0] >= -1e-9 * np.trace(rho).real


@settings(max_examples=60, deadline=None)
@given(seeds, st.floats(1e-6, 1e6), st.floats(0, 2 * np.pi))
def test_loss_invariant_under_scale_and_phase(seed, scale, phase):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    chi = rng.normal(size=8) + 1j * rng.normal(size=8)
    base = loss_from_vectors(v, chi)
    assert base >= 0
    assert abs(loss_from_vectors(scale * np.exp(1j * phase) * v, chi) - base) < 1e-9
