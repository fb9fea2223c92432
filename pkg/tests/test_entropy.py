import numpy as np
import pytest

from declab.entropy import (
    fidelity,
    generalized_fidelity,
    generalized_trace_distance,
    h2_cond,
    h_min,
    h_min_cond,
    in_epsilon_ball,
    min_trace_dominating,
    purified_distance,
    trace_distance,
)
from declab.linalg import tensor
from declab.states import DensityOp, max_entangled, random_cq, random_density


def test_h_min_basics():
    assert np.isclose(h_min(np.eye(4) / 4), 2.0)
    v = np.zeros(3)
    v[1] = 1.0
    assert np.isclose(h_min(np.outer(v, v)), 0.0)
    assert np.isclose(h_min(np.diag([0.5, 0.3, 0.2])), 1.0)
    with pytest.raises(ValueError):
        h_min(np.zeros((2, 2)))


def test_h_min_cond_product():
    rho_a = random_density(3, seed=0).mat
    sig_b = random_density(2, seed=1).mat
    res = h_min_cond(tensor(rho_a, sig_b), (3, 2))
    assert abs(res.value - h_min(rho_a)) < 1e-8
    assert np.isclose(np.trace(res.optimizer).real, 1.0)


@pytest.mark.parametrize("d", [2, 3])
def test_h_min_cond_max_entangled(d):
    phi = max_entangled(d)
    res = h_min_cond(phi.mat, phi.dims)
    assert abs(res.value + np.log2(d)) < 1e-8
    assert res.meta["primal_slack"] > -1e-8


def test_h_min_cond_cq_reduced_oracle():
    # classical mixture on A: the SDP decomposes into blockwise domination
    rng = np.random.default_rng(2)
    probs = rng.dirichlet(np.ones(3))
    blocks = [probs[i] * random_density(2, seed=10 + i).mat for i in range(3)]
    mat = np.zeros((6, 6), dtype=complex)
    for i, b in enumerate(blocks):
        mat[2 * i:2 * i + 2, 2 * i:2 * i + 2] = b
    from declab.linalg import permute_systems

    rho = permute_systems(mat, (3, 2), [0, 1])   # already (A, B) ordered
    full = h_min_cond(rho, (3, 2)).value
    reduced_tr, _ = min_trace_dominating(blocks)
    assert abs(full + np.log2(reduced_tr)) < 1e-7


def test_h_min_cond_subnormalized():
    rho = random_density(6, seed=3, dims=(3, 2))
    scaled = DensityOp(0.5 * rho.mat, rho.dims)
    full = h_min_cond(rho.mat, rho.dims).value
    half = h_min_cond(scaled.mat, scaled.dims).value
    assert abs(half - full - 1.0) < 1e-7   # scaling by 1/2 adds one bit


def test_h2_cond_product_uniform():
    rho_b = random_density(3, seed=4).mat
    rho = tensor(np.eye(4) / 4, rho_b)
    res = h2_cond(rho, (4, 3), sigma=rho_b)
    assert abs(res.value - 2.0) < 1e-10
    assert res.method == "fixed_sigma"


def test_h2_cond_max_entangled():
    phi = max_entangled(2)
    res = h2_cond(phi.mat, phi.dims, sigma=np.eye(2) / 2)
    assert abs(res.value + 1.0) < 1e-10


def test_h2_cond_support_violation():
    rho = random_density(4, seed=5, dims=(2, 2))
    with pytest.raises(ValueError):
        h2_cond(rho.mat, rho.dims, sigma=np.diag([1.0, 0.0]))


def test_h2_monotone_and_min_entropy_bound():
    for k in range(15):
        rho = random_density(6, seed=50 + k, dims=(3, 2))
        res = h_min_cond(rho.mat, rho.dims)
        fixed = h2_cond(rho.mat, rho.dims).value
        opt = h2_cond(rho.mat, rho.dims, optimize=True, seed=k,
                      zeta_start=res.optimizer).value
        assert fixed <= opt + 1e-9
        assert res.value <= opt + 1e-8


def test_trace_distances():
    rho = random_density(3, seed=6).mat
    assert trace_distance(rho, rho) == 0.0
    e0, e1 = np.zeros(2), np.zeros(2)
    e0[0] = e1[1] = 1.0
    assert np.isclose(trace_distance(np.outer(e0, e0), np.outer(e1, e1)), 2.0)
    assert np.isclose(generalized_trace_distance(rho, 0.5 * rho),
                      np.trace(rho).real)


def test_fidelity_family():
    rho = random_density(3, seed=7).mat
    assert np.isclose(fidelity(rho, rho), np.trace(rho).real)
    # sqrt(1 - F^2) amplifies fidelity round-off near F = 1
    assert purified_distance(rho, rho) < 1e-7
    rng = np.random.default_rng(8)
    a = rng.normal(size=3) + 1j * rng.normal(size=3)
    b = rng.normal(size=3) + 1j * rng.normal(size=3)
    a /= np.linalg.norm(a)
    b /= np.linalg.norm(b)
    assert np.isclose(fidelity(np.outer(a, a.conj()), np.outer(b, b.conj())),
                      abs(np.vdot(a, b)), atol=1e-10)
    p = np.array([0.5, 0.3, 0.2])
    q = np.array([0.1, 0.6, 0.3])
    assert np.isclose(fidelity(np.diag(p), np.diag(q)),
                      np.sum(np.sqrt(p * q)), atol=1e-12)


def test_generalized_fidelity_subnormalized():
    rho = 0.6 * random_density(2, seed=9).mat
    sig = 0.8 * random_density(2, seed=10).mat
    expected = fidelity(rho, sig) + np.sqrt(0.4 * 0.2)
    assert np.isclose(generalized_fidelity(rho, sig), expected)


def test_in_epsilon_ball():
    rho = random_density(3, seed=11).mat
    assert in_epsilon_ball(rho, rho, 0.0)
    e0, e1 = np.zeros(2), np.zeros(2)
    e0[0] = e1[1] = 1.0
    assert not in_epsilon_ball(np.outer(e0, e0), np.outer(e1, e1), 0.5)
    shrunk = 0.99 * rho
    eps = purified_distance(shrunk, rho)
    assert in_epsilon_ball(rho, shrunk, eps + 1e-12)
    with pytest.raises(ValueError):
        in_epsilon_ball(0.01 * rho, rho, 0.5)


def test_fuchs_van_de_graaf_small_batch():
    for k in range(60):
        rng = np.random.default_rng(200 + k)
        d = int(rng.integers(2, 5))
        sc = (1.0, 1.0) if k % 2 else tuple(rng.uniform(0.2, 1.0, size=2))
        r = random_density(d, seed=int(rng.integers(2**31))).mat * sc[0]
        s = random_density(d, seed=int(rng.integers(2**31))).mat * sc[1]
        dist = generalized_trace_distance(r, s)
        p = purified_distance(r, s)
        assert 0.5 * dist <= p + 1e-9
        assert p <= np.sqrt(dist) + 1e-9


def test_h_min_cond_cq_state_via_solver():
    rho = random_cq((4, 2), seed=12)
    res = h_min_cond(rho.mat, rho.dims)
    blocks = [rho.mat.reshape(4, 2, 4, 2)[i, :, i, :] for i in range(4)]
    tr, _ = min_trace_dominating(blocks)
    assert abs(res.value + np.log2(tr)) < 1e-7
