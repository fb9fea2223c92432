"""Single-shot entropies and distance measures for sub-normalized states.

All entropies are in bits. The conditional min-entropy is computed by a small
interior-point solver written for the one SDP shape needed here,
min{tr z : rho <= I (x) z, z >= 0}, which is plenty at total dimension <= 16.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .linalg import check_dims, eig_hermitian, mpow, schatten_norm, support_projector
from .states import DensityOp


@dataclass(frozen=True)
class EntropyResult:
    value: float                 # bits
    optimizer: np.ndarray        # normalized achieving sigma/zeta on the conditioning system
    method: str                  # closed_form | fixed_sigma | optimized
    meta: dict | None = None


def _matdims(state, dims=None):
    if isinstance(state, DensityOp):
        return state.mat, state.dims
    mat = np.asarray(state, dtype=complex)
    if dims is None:
        raise ValueError("dims required when passing a bare matrix")
    return mat, check_dims(mat, dims)


def h_min(state, dims=None) -> float:
    """Unconditional min-entropy, -log2 of the largest eigenvalue."""
    mat, _ = _matdims(state, dims if dims is not None else (np.asarray(state).shape[0],))
    w, _ = eig_hermitian(mat)
    if w[-1] <= 0:
        raise ValueError("min-entropy of the zero operator is undefined")
    return float(-np.log2(w[-1]))


# ---------------------------------------------------------------------------
# barrier solver for min tr z  s.t.  I_A (x) z - rho >= 0,  z >= 0
# ---------------------------------------------------------------------------

def _herm_basis(d: int) -> np.ndarray:
    """Orthonormal basis of Hermitian d x d matrices under tr(AB)."""
    basis = np.zeros((d * d, d, d), dtype=complex)
    i = 0
    for k in range(d):
        basis[i, k, k] = 1.0
        i += 1
    for k in range(d):
        for l in range(k + 1, d):
            basis[i, k, l] = basis[i, l, k] = 1 / np.sqrt(2)
            i += 1
            basis[i, k, l] = -1j / np.sqrt(2)
            basis[i, l, k] = 1j / np.sqrt(2)
            i += 1
    return basis


def _is_pd(m: np.ndarray) -> bool:
    try:
        np.linalg.cholesky(m)
        return True
    except np.linalg.LinAlgError:
        return False


def min_trace_dominating(blocks, gap_tol: float = 1e-10):
    """min tr z over z with z >= B_i for every Hermitian block B_i (all d x d).

    Path-following barrier with certified duality gap <= gap_tol. Returns
    (optimal trace, z).
    """
    blocks = [np.asarray(b, dtype=complex) for b in blocks]
    d = blocks[0].shape[0]
    basis = _herm_basis(d)
    n = d * d
    tr_basis = np.einsum('kaa->k', basis).real
    lam = max(float(np.linalg.eigvalsh(b)[-1]) for b in blocks)
    z = (max(lam, 0.0) + max(1.0, abs(lam))) * np.eye(d, dtype=complex)
    nu = d * (len(blocks) + 1)          # total barrier degree incl. z >= 0
    t = max(1.0, nu / max(lam * d, 1e-2))
    while True:
        for _ in range(60):
            surpluses = [z - b for b in blocks] + [z]
            try:
                inverses = [np.linalg.inv(s) for s in surpluses]
            except np.linalg.LinAlgError:
                break
            grad = t * tr_basis
            hess = np.zeros((n, n))
            for si in inverses:
                q = np.matmul(si[None, :, :], basis)
                grad = grad - np.einsum('kii->k', q).real
                flat = q.reshape(n, -1)
                flat_t = q.transpose(0, 2, 1).reshape(n, -1)
                hess += (flat @ flat_t.T).real
            try:
                dx = np.linalg.solve(hess, -grad)
            except np.linalg.LinAlgError:
                dx = np.linalg.lstsq(hess, -grad, rcond=None)[0]
            dec = float(-grad @ dx)
            if not np.isfinite(dec) or dec <= 0:
                break
            dz = np.tensordot(dx, basis, axes=(0, 0))
            step, ok = 1.0, False
            for _ in range(60):
                z_new = z + step * dz
                if all(_is_pd(z_new - b) for b in blocks) and _is_pd(z_new):
                    ok = True
                    break
                step *= 0.5
            if not ok:
                break
            z = z_new
            if dec < 1e-11:
                break
        if nu / t < gap_tol:
            break
        t *= 20.0
    return float(np.trace(z).real), z


def _sdp_conditional(rho: np.ndarray, d_a: int, d_b: int, gap_tol: float = 1e-10):
    """Solve min{tr z : rho_AB <= I_A (x) z} via its block form.

    The constraint I (x) z >= rho is kept whole (it does not decompose for
    entangled rho), so the generic solver is called with the block structure
    handled through an equivalent embedding: we treat S(z) = I (x) z - rho
    directly.
    """
    basis = _herm_basis(d_b)
    n = d_b * d_b
    D = d_a * d_b
    tr_basis = np.einsum('kaa->k', basis).real
    identity_a = np.eye(d_a)
    lam = float(np.linalg.eigvalsh(rho)[-1])
    z = (max(lam, 0.0) + max(1.0, abs(lam))) * np.eye(d_b, dtype=complex)
    nu = D + d_b
    t = max(1.0, nu / max(lam * d_b, 1e-2))
    while True:
        for _ in range(60):
            s = np.kron(identity_a, z) - rho
            try:
                si = np.linalg.inv(s)
                zi = np.linalg.inv(z)
            except np.linalg.LinAlgError:
                break
            si4 = si.reshape(d_a, d_b, d_a, d_b)
            p = np.tensordot(si4, basis, axes=([3], [1]))        # (a,i,b,k,j)
            p = p.transpose(3, 0, 1, 2, 4).reshape(n, D, D)
            q = np.matmul(zi[None, :, :], basis)
            grad = t * tr_basis - np.einsum('kii->k', p).real - np.einsum('kii->k', q).real
            p_flat = p.reshape(n, -1)
            p_flat_t = p.transpose(0, 2, 1).reshape(n, -1)
            q_flat = q.reshape(n, -1)
            q_flat_t = q.transpose(0, 2, 1).reshape(n, -1)
            hess = (p_flat @ p_flat_t.T + q_flat @ q_flat_t.T).real
            try:
                dx = np.linalg.solve(hess, -grad)
            except np.linalg.LinAlgError:
                dx = np.linalg.lstsq(hess, -grad, rcond=None)[0]
            dec = float(-grad @ dx)
            if not np.isfinite(dec) or dec <= 0:
                break
            dz = np.tensordot(dx, basis, axes=(0, 0))
            step, ok = 1.0, False
            for _ in range(60):
                z_new = z + step * dz
                if _is_pd(z_new) and _is_pd(np.kron(identity_a, z_new) - rho):
                    ok = True
                    break
                step *= 0.5
            if not ok:
                break
            z = z_new
            if dec < 1e-11:
                break
        if nu / t < gap_tol:
            break
        t *= 20.0
    return float(np.trace(z).real), z


def h_min_cond(state, dims=None, gap_tol: float = 1e-10) -> EntropyResult:
    """Conditional min-entropy of the first subsystem given the second.

    Solves min{tr z : rho_AB <= I_A (x) z, z >= 0}; value = -log2 tr z*.
    """
    mat, dims = _matdims(state, dims)
    if len(dims) != 2:
        raise ValueError("h_min_cond expects a bipartite state")
    d_a, d_b = dims
    if np.trace(mat).real <= 0:
        raise ValueError("h_min_cond of a zero operator is undefined")
    val, z = _sdp_conditional(mat, d_a, d_b, gap_tol=gap_tol)
    s_min = float(np.linalg.eigvalsh(np.kron(np.eye(d_a), z) - mat)[0])
    meta = {"gap_bound": (d_a * d_b + d_b) * gap_tol, "primal_slack": s_min}
    return EntropyResult(
        value=float(-np.log2(val)),
        optimizer=z / np.trace(z).real,
        method="optimized",
        meta=meta,
    )


def _sandwich_trace(mat: np.ndarray, dims, s_half: np.ndarray) -> float:
    """tr[((I (x) S) rho)^2] via the conditioning-system blocks of rho."""
    d_a, d_b = dims
    blocks = mat.reshape(d_a, d_b, d_a, d_b).transpose(0, 2, 1, 3)
    w = np.matmul(s_half, blocks)            # S rho_ab blockwise
    return float(np.einsum('abij,baji->', w, w).real)


def _h2_value(mat: np.ndarray, dims, sigma: np.ndarray) -> float:
    """tr[((I (x) sigma^-1/2) rho)^2] / tr rho, the quantity inside -log2."""
    return _sandwich_trace(mat, dims, mpow(sigma, -0.5)) / float(np.trace(mat).real)


def h2_cond(state, dims=None, sigma=None, optimize: bool = False,
            restarts: int = 5, seed: int = 0, zeta_start=None) -> EntropyResult:
    """Conditional collision entropy of the first subsystem given the second.

    With `sigma` fixed the returned value lower-bounds the optimum, which keeps
    every decoupling upper bound valid. The default sigma is the conditioning
    marginal; `optimize=True` refines over sigma = L L^dag / tr with a
    derivative-free local search seeded from the marginal and the min-entropy
    optimizer (`zeta_start` skips recomputing the latter when the caller
    already solved the SDP).
    """
    mat, dims = _matdims(state, dims)
    if len(dims) != 2:
        raise ValueError("h2_cond expects a bipartite state")
    d_a, d_b = dims
    rho_b = np.trace(mat.reshape(d_a, d_b, d_a, d_b), axis1=0, axis2=2)
    if sigma is not None:
        sigma = np.asarray(sigma, dtype=complex)
        proj = support_projector(sigma)
        leak = np.abs(rho_b - proj @ rho_b @ proj).max()
        if leak > 1e-8:
            raise ValueError("support of sigma does not contain the support of the marginal")
        val = _h2_value(mat, dims, sigma)
        return EntropyResult(float(-np.log2(val)), sigma / np.trace(sigma).real, "fixed_sigma")

    sigma0 = rho_b / np.trace(rho_b).real
    best_sigma, best_val = sigma0, _h2_value(mat, dims, sigma0)
    if not optimize:
        return EntropyResult(float(-np.log2(best_val)), best_sigma, "fixed_sigma")

    zeta = h_min_cond(mat, dims).optimizer if zeta_start is None else np.asarray(zeta_start)
    v_zeta = _h2_value(mat, dims, zeta)
    if v_zeta < best_val:
        best_sigma, best_val = zeta, v_zeta

    def from_params(x):
        low = np.zeros((d_b, d_b), dtype=complex)
        k = 0
        for i in range(d_b):
            low[i, i] = x[k]
            k += 1
            for j in range(i):
                low[i, j] = x[k] + 1j * x[k + 1]
                k += 2
        s = low @ low.conj().T
        tr = np.trace(s).real
        if tr <= 1e-300:
            return np.eye(d_b) / d_b
        return s / tr

    tr_mat = float(np.trace(mat).real)

    def objective(x):
        # floor-regularized inverse so near-singular sigma cannot fake a
        # small sandwich trace by dropping support
        s = from_params(x)
        w, v = np.linalg.eigh((s + s.conj().T) / 2)
        s_half = (v * np.maximum(w, 1e-14) ** -0.5) @ v.conj().T
        return _sandwich_trace(mat, dims, s_half) / tr_mat

    def to_params(s):
        w, v = eig_hermitian(s + 1e-12 * np.eye(d_b))
        low = np.linalg.cholesky((v * np.maximum(w, 1e-12)) @ v.conj().T)
        x = []
        for i in range(d_b):
            x.append(low[i, i].real)
            for j in range(i):
                x.extend([low[i, j].real, low[i, j].imag])
        return np.array(x)

    rng = np.random.default_rng(seed)
    n_par = d_b * d_b
    starts = [to_params(best_sigma), to_params(zeta), to_params(np.eye(d_b) / d_b)]
    while len(starts) < restarts:
        starts.append(rng.normal(size=n_par))
    for x0 in starts[:restarts]:
        res = minimize(objective, x0, method="Powell",
                       options={"maxfev": 60 * n_par, "xtol": 1e-9, "ftol": 1e-11})
        if res.fun < best_val:
            best_val = float(res.fun)
            best_sigma = from_params(res.x)
    return EntropyResult(float(-np.log2(best_val)), best_sigma, "optimized")


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------

def trace_distance(rho, sigma) -> float:
    """Un-halved trace distance ||rho - sigma||_1."""
    return schatten_norm(np.asarray(rho) - np.asarray(sigma), 1)


def generalized_trace_distance(rho, sigma) -> float:
    rho, sigma = np.asarray(rho), np.asarray(sigma)
    return trace_distance(rho, sigma) + abs(np.trace(rho).real - np.trace(sigma).real)


def fidelity(rho, sigma) -> float:
    """||sqrt(rho) sqrt(sigma)||_1."""
    r = mpow(np.asarray(rho, dtype=complex), 0.5)
    s = mpow(np.asarray(sigma, dtype=complex), 0.5)
    return schatten_norm(r @ s, 1)


def generalized_fidelity(rho, sigma) -> float:
    rho, sigma = np.asarray(rho), np.asarray(sigma)
    slack_r = max(0.0, 1.0 - np.trace(rho).real)
    slack_s = max(0.0, 1.0 - np.trace(sigma).real)
    return fidelity(rho, sigma) + np.sqrt(slack_r * slack_s)


def purified_distance(rho, sigma) -> float:
    f = min(generalized_fidelity(rho, sigma), 1.0)
    return float(np.sqrt(max(0.0, 1.0 - f * f)))


def in_epsilon_ball(rho, sigma, eps: float, atol: float = 1e-7) -> bool:
    """Membership of sigma in the purified-distance eps-ball around rho.

    atol absorbs the sqrt(1 - F^2) amplification of fidelity round-off near
    F = 1, so that the ball always contains its own center.
    """
    rho = np.asarray(rho)
    if np.sqrt(np.trace(rho).real) <= eps:
        raise ValueError("ball undefined: sqrt(tr rho) must exceed eps")
    return purified_distance(sigma, rho) <= eps + atol
