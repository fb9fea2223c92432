"""Quantum states and channels in the Choi representation.

A channel T from dimension d_in to d_out is stored as its Choi operator on
(input copy, output), i.e. (I (x) T) applied to the maximally entangled state,
and is always applied through the inverse Choi formula
T(X) = d_in * tr_in[(X^T (x) I) choi].
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    check_dims,
    eig_hermitian,
    partial_trace,
    require_hermitian,
    tensor,
)

PSD_TOL = 1e-10
TRACE_TOL = 1e-10


@dataclass(frozen=True)
class DensityOp:
    """PSD sub-normalized operator with subsystem dimensions."""

    mat: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", check_dims(self.mat, self.dims))
        require_hermitian(self.mat, "density operator")
        w, _ = eig_hermitian(self.mat)
        if w[0] < -PSD_TOL:
            raise ValueError(f"not PSD: min eigenvalue {w[0]:.3e}")
        if w.sum() > 1 + TRACE_TOL:
            raise ValueError(f"trace {w.sum():.12f} exceeds 1")

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def marginal(self, keep) -> np.ndarray:
        return partial_trace(self.mat, self.dims, keep)


@dataclass(frozen=True)
class ChoiChannel:
    """CP map stored by its Choi operator on (input copy, output)."""

    choi: np.ndarray
    d_in: int
    d_out: int
    tp: bool = field(default=False)

    def __post_init__(self):
        check_dims(self.choi, (self.d_in, self.d_out))
        require_hermitian(self.choi, "Choi operator")
        w, _ = eig_hermitian(self.choi)
        if w[0] < -PSD_TOL:
            raise ValueError(f"Choi not PSD: min eigenvalue {w[0]:.3e}")
        if self.tp:
            m = partial_trace(self.choi, (self.d_in, self.d_out), [0])
            if np.abs(m - np.eye(self.d_in) / self.d_in).max() > TRACE_TOL:
                raise ValueError("tp flag set but input marginal of Choi is not maximally mixed")

    @property
    def env_marginal(self) -> np.ndarray:
        """Output marginal of the Choi operator; equals T(pi_in)."""
        return partial_trace(self.choi, (self.d_in, self.d_out), [1])


def max_entangled(d: int) -> DensityOp:
    """Rank-1 projector onto (1/sqrt d) sum_i |ii>."""
    v = np.zeros(d * d, dtype=complex)
    for i in range(d):
        v[i * d + i] = 1.0
    v /= np.sqrt(d)
    return DensityOp(np.outer(v, v.conj()), (d, d))


def classical_correlated(d: int) -> DensityOp:
    """Perfectly correlated classical state (1/d) sum_i |ii><ii|."""
    m = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        m[i * d + i, i * d + i] = 1.0 / d
    return DensityOp(m, (d, d))


def decoupling_state(d: int) -> np.ndarray:
    """Traceless difference between maximal entanglement and the product of marginals."""
    if d < 2:
        raise ValueError("needs dimension >= 2")
    return max_entangled(d).mat - np.eye(d * d, dtype=complex) / d**2


def cq_decoupling_state(d: int) -> np.ndarray:
    """Classical analogue: correlated classical state minus the fully mixed one."""
    if d < 2:
        raise ValueError("needs dimension >= 2")
    return classical_correlated(d).mat - np.eye(d * d, dtype=complex) / d**2


def apply_channel_mat(ch: ChoiChannel, mat: np.ndarray, dims, subsystem: int = 0):
    """Apply the channel on one subsystem of an arbitrary operator.

    Returns (new matrix, new dims). Works for any (not necessarily PSD) input,
    which the verifiers need for difference operators.
    """
    dims = check_dims(mat, dims)
    k = len(dims)
    if dims[subsystem] != ch.d_in:
        raise ValueError(f"subsystem dim {dims[subsystem]} != channel input dim {ch.d_in}")
    w4 = ch.choi.reshape(ch.d_in, ch.d_out, ch.d_in, ch.d_out)
    # kernel K[e,e',b,a] so that T(X)[e,e'] = sum_ab K[e,e',b,a] X[b,a]
    kernel = ch.d_in * w4.transpose(1, 3, 0, 2)
    t = np.tensordot(kernel, mat.reshape(dims + dims), axes=([2, 3], [subsystem, k + subsystem]))
    rest = [i for i in range(k) if i != subsystem]
    pos = {}
    nxt = 2
    for i in rest:
        pos[i] = nxt
        nxt += 1
    col = {}
    for i in rest:
        col[i] = nxt
        nxt += 1
    perm = [0 if i == subsystem else pos[i] for i in range(k)]
    perm += [1 if i == subsystem else col[i] for i in range(k)]
    t = t.transpose(perm)
    new_dims = list(dims)
    new_dims[subsystem] = ch.d_out
    n = int(np.prod(new_dims))
    return t.reshape(n, n), tuple(new_dims)


def apply_channel(ch: ChoiChannel, rho: DensityOp, subsystem: int = 0) -> DensityOp:
    out, new_dims = apply_channel_mat(ch, rho.mat, rho.dims, subsystem)
    return DensityOp(out, new_dims)


def choi_of_state(rho: DensityOp) -> ChoiChannel:
    """The map sending the maximally entangled state to the given bipartite state.

    The state, read on (input copy, output), IS the Choi operator of that map;
    it is generally not trace preserving.
    """
    if len(rho.dims) != 2:
        raise ValueError("choi_of_state expects a bipartite state")
    d_a, d_r = rho.dims
    return ChoiChannel(rho.mat, d_a, d_r, tp=False)


def classicalize_state(rho: DensityOp, subsystem: int = 0) -> DensityOp:
    """Pinch one subsystem in the computational basis (zero off-diagonal blocks)."""
    return DensityOp(pinch_mat(rho.mat, rho.dims, subsystem), rho.dims)


def pinch_mat(mat: np.ndarray, dims, subsystem: int = 0) -> np.ndarray:
    dims = check_dims(mat, dims)
    k = len(dims)
    d = dims[subsystem]
    t = mat.reshape(dims + dims).copy()
    idx_row = np.arange(d).reshape([-1] + [1] * (2 * k - 1))
    idx_col = np.arange(d).reshape([1] * (k + subsystem) + [-1] + [1] * (k - subsystem - 1))
    sel_row = np.moveaxis(idx_row, 0, subsystem)
    mask = sel_row == idx_col
    return (t * mask).reshape(mat.shape)


def classicalize_channel(ch: ChoiChannel) -> ChoiChannel:
    """Channel that first dephases its input in the computational basis.

    Its Choi operator is the pinching of the original Choi on the input copy.
    """
    return ChoiChannel(pinch_mat(ch.choi, (ch.d_in, ch.d_out), 0), ch.d_in, ch.d_out, tp=ch.tp)


def is_cq(rho: DensityOp, subsystem: int = 0, tol: float = 1e-10) -> bool:
    """True iff all off-diagonal blocks on the given subsystem vanish."""
    diff = rho.mat - pinch_mat(rho.mat, rho.dims, subsystem)
    return bool(np.abs(diff).max() <= tol)


def random_density(d: int, rank: int | None = None, seed=0, dims=None) -> DensityOp:
    """Normalized Wishart state G G^dagger / tr, deterministic per seed."""
    rank = d if rank is None else rank
    if not 1 <= rank <= d:
        raise ValueError("rank must be in 1..d")
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    m = g @ g.conj().T
    m /= np.trace(m).real
    return DensityOp(m, dims if dims is not None else (d,))


def random_cq(dims, seed=0, subsystem: int = 0, trace: float = 1.0) -> DensityOp:
    """Random state that is classical on one subsystem."""
    d = int(np.prod(dims))
    rho = random_density(d, seed=seed, dims=dims)
    m = pinch_mat(rho.mat, rho.dims, subsystem) * trace
    return DensityOp(m, tuple(dims))


def random_channel(d_in: int, d_out: int, tp: bool = True, seed=0) -> ChoiChannel:
    """Random CP map; trace-1 Choi, or projected to trace preserving."""
    rng = np.random.default_rng(seed)
    n = d_in * d_out
    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    w = g @ g.conj().T
    if tp:
        m = partial_trace(w, (d_in, d_out), [0])
        ev, vec = eig_hermitian(m)
        m_isqrt = (vec * (1 / np.sqrt(ev))) @ vec.conj().T
        s = tensor(m_isqrt, np.eye(d_out))
        return ChoiChannel(s @ w @ s / d_in, d_in, d_out, tp=True)
    return ChoiChannel(w / np.trace(w).real, d_in, d_out, tp=False)


def partial_trace_channel(d_keep: int, d_drop: int) -> ChoiChannel:
    """The channel tr_2 : (d_keep * d_drop) -> d_keep as a Choi operator."""
    d_in = d_keep * d_drop
    phi = max_entangled(d_in)
    choi = partial_trace(phi.mat, (d_in, d_keep, d_drop), [0, 1])
    return ChoiChannel(choi, d_in, d_keep, tp=True)
