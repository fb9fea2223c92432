"""Second-moment averages: exact and Monte Carlo Haar twirls, unitary
2-designs, random circuits, and the permutation twirl via the 11-element
commutant basis with its closed-form Gramian.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

from .linalg import require_hermitian, swap_operator, tensor
from .symgroup import all_perms, perm_operator

UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class HaarTwirlResult:
    alpha: float
    beta: float
    reconstructed: np.ndarray


@dataclass(frozen=True)
class PermTwirlResult:
    coeffs: np.ndarray            # 11 expansion coefficients
    reconstructed: np.ndarray


@dataclass(frozen=True)
class UnitaryEnsemble:
    weights: np.ndarray
    unitaries: tuple

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        us = tuple(np.asarray(u, dtype=complex) for u in self.unitaries)
        if w.shape != (len(us),) or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must match members and sum to 1")
        for u in us:
            if np.abs(u.conj().T @ u - np.eye(u.shape[0])).max() > UNITARY_TOL:
                raise ValueError("ensemble member is not unitary within tolerance")
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "unitaries", us)

    def __len__(self):
        return len(self.unitaries)

    @property
    def dim(self) -> int:
        return self.unitaries[0].shape[0]


@dataclass(frozen=True)
class CommutantBasis:
    d: int
    ops: tuple                    # the 11 basis matrices
    gram: np.ndarray              # closed-form 11 x 11 Gramian
    gram_inv: np.ndarray          # closed-form inverse


def haar_twirl2_exact(mat: np.ndarray, d: int) -> HaarTwirlResult:
    """Exact two-fold Haar average of U^t2-dagger M U^t2 as alpha*I + beta*F.

    alpha, beta follow from matching tr and tr(. F) of the projection onto
    span{I, F}.
    """
    if d < 2:
        raise ValueError("needs d >= 2")
    if mat.shape != (d * d, d * d):
        raise ValueError("matrix must act on two copies")
    f = swap_operator(d)
    tr_m = np.trace(mat)
    tr_mf = np.trace(mat @ f)
    alpha = (d * d * tr_m - d * tr_mf) / (d * d * (d * d - 1))
    beta = (d * d * tr_mf - d * tr_m) / (d * d * (d * d - 1))
    rec = alpha * np.eye(d * d) + beta * f
    return HaarTwirlResult(complex(alpha), complex(beta), rec)


def haar_sample(d: int, rng) -> np.ndarray:
    """Haar unitary via QR of a complex Ginibre matrix with phase correction."""
    rng = np.random.default_rng(rng)
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def haar_twirl2_mc(mat: np.ndarray, d: int, n: int, seed=0) -> np.ndarray:
    """(1/N) sum_k U_k^t2-dagger M U_k^t2 over Haar samples."""
    if n < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    acc = np.zeros_like(np.asarray(mat, dtype=complex))
    for _ in range(n):
        w = tensor(*(2 * [haar_sample(d, rng)]))
        acc += w.conj().T @ mat @ w
    return acc / n


def design_twirl2(ens: UnitaryEnsemble, mat: np.ndarray, adjoint_side: bool = False) -> np.ndarray:
    """Weighted two-fold conjugation sum over the ensemble.

    adjoint_side=True conjugates by U-dagger on the left, the variant used when
    pulling operators back through channels.
    """
    acc = np.zeros_like(np.asarray(mat, dtype=complex))
    for w, u in zip(ens.weights, ens.unitaries):
        uu = tensor(u, u)
        if adjoint_side:
            acc += w * (uu.conj().T @ mat @ uu)
        else:
            acc += w * (uu @ mat @ uu.conj().T)
    return acc


def clifford_1q() -> UnitaryEnsemble:
    """The 24 single-qubit Clifford unitaries (global phase quotiented),
    generated by closure from H and S; an exact 2-design."""
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    s = np.array([[1, 0], [0, 1j]], dtype=complex)

    def canon(u):
        flat = u.ravel()
        pivot = flat[np.abs(flat) > 1e-9][0]
        return u * (abs(pivot) / pivot)

    def key(u):
        return tuple(np.round(u.ravel(), 9).tolist())

    found = {key(canon(np.eye(2, dtype=complex))): np.eye(2, dtype=complex)}
    frontier = [np.eye(2, dtype=complex)]
    while frontier:
        nxt = []
        for u in frontier:
            for g in (h, s):
                v = canon(g @ u)
                k = key(v)
                if k not in found:
                    found[k] = v
                    nxt.append(v)
        frontier = nxt
    members = tuple(found.values())
    if len(members) != 24:
        raise RuntimeError(f"Clifford closure produced {len(members)} elements")
    return UnitaryEnsemble(np.full(24, 1 / 24), members)


def moment_superop_choi(ens: UnitaryEnsemble | None, d: int) -> np.ndarray:
    """Normalized Choi matrix of the 2-fold moment map; ens=None means Haar."""
    n = d * d
    if ens is None:
        return _haar_choi(d)
    acc = np.zeros((n * n, n * n), dtype=complex)
    for w, u in zip(ens.weights, ens.unitaries):
        vec = tensor(u, u).reshape(-1) / np.sqrt(n)
        acc += w * np.outer(vec, vec.conj())
    return acc


def _haar_choi(d: int) -> np.ndarray:
    """Choi of the exact Haar 2-fold twirl, from G_H(E_ij) = a_ij I + b_ij F."""
    n = d * d
    f = swap_operator(d)
    denom = d * d * (d * d - 1)
    a_coef = (d * d * np.eye(n) - d * f.T) / denom
    b_coef = (d * d * f.T - d * np.eye(n)) / denom
    out = np.zeros((n, n, n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            out[:, i, :, j] = a_coef[i, j] * np.eye(n) + b_coef[i, j] * f
    return out.reshape(n * n, n * n) / n


def design_epsilon_bound(ens: UnitaryEnsemble, d: int) -> float:
    """Upper bound d^2 * ||Choi(G_W) - Choi(G_H)||_1 on the diamond-norm
    deviation of the ensemble's 2-fold moment map from Haar."""
    if d * d > 64:
        raise ValueError("moment-map Choi too large (needs d^2 <= 64)")
    diff = moment_superop_choi(ens, d) - _haar_choi(d)
    eigs = np.linalg.eigvalsh((diff + diff.conj().T) / 2)
    return float(d * d * np.abs(eigs).sum())


_HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_TGATE = np.diag([1.0, np.exp(1j * np.pi / 4)])
_CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)


def random_circuit(n_qubits: int, t: int, seed=0, gates: str = "universal") -> np.ndarray:
    """Product of t random two-qubit gates on uniformly random ordered pairs.

    gates="universal" draws each step from the {H, T, CNOT} set (lifted to the
    chosen pair); gates="haar" draws Haar elements of the 4-dimensional unitary
    group. The discrete set keeps the depth dependence meaningful even when a
    single gate already spans the whole register (n_qubits = 2), where Haar
    steps of any depth are exactly Haar distributed.
    """
    if not 2 <= n_qubits <= 4:
        raise ValueError("supported qubit counts: 2..4")
    if gates not in ("universal", "haar"):
        raise ValueError("gates must be 'universal' or 'haar'")
    rng = np.random.default_rng(seed)
    dim = 2 ** n_qubits
    u = np.eye(dim, dtype=complex)
    dims = (2,) * n_qubits
    from .linalg import permute_systems

    for _ in range(t):
        q1, q2 = (int(q) for q in rng.choice(n_qubits, size=2, replace=False))
        if gates == "haar":
            gate = haar_sample(4, rng)
        else:
            pick = rng.integers(3)
            if pick == 0:
                gate = tensor(_HADAMARD, np.eye(2))
            elif pick == 1:
                gate = tensor(_TGATE, np.eye(2))
            else:
                gate = _CNOT
        rest = [q for q in range(n_qubits) if q not in (q1, q2)]
        big = tensor(gate, np.eye(2 ** (n_qubits - 2)))
        order = [q1, q2] + rest
        inv_order = [order.index(q) for q in range(n_qubits)]
        u = permute_systems(big, dims, inv_order) @ u
    return u


def circuit_ensemble(n_qubits: int, t: int, n_circuits: int, seed=0,
                     gates: str = "universal") -> UnitaryEnsemble:
    """Uniform ensemble of independent random circuits of fixed depth."""
    seeds = np.random.default_rng(seed).integers(0, 2 ** 63 - 1, size=n_circuits)
    members = tuple(random_circuit(n_qubits, t, s, gates=gates) for s in seeds)
    return UnitaryEnsemble(np.full(n_circuits, 1 / n_circuits), members)


# ---------------------------------------------------------------------------
# permutation twirl and the commutant basis
# ---------------------------------------------------------------------------

def commutant_ops(d: int) -> tuple:
    """The 11 spanning operators of the Hermitian swap-and-permutation commutant."""
    eye = np.eye(d)
    ones = np.ones((d, d))
    f = swap_operator(d)
    phi_sum = np.zeros((d * d, d * d))     # sum_ij |ii><jj| = d * Phi
    t_sum = np.zeros((d * d, d * d))       # sum_i |ii><ii| = d * T
    for i in range(d):
        for j in range(d):
            phi_sum[i * d + i, j * d + j] = 1.0
    for i in range(d):
        t_sum[i * d + i, i * d + i] = 1.0
    a7 = np.zeros((d * d, d * d))
    a10 = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            e_ii = np.zeros((d, d)); e_ii[i, i] = 1
            e_ij = np.zeros((d, d)); e_ij[i, j] = 1
            e_ji = np.zeros((d, d)); e_ji[j, i] = 1
            a7 += (np.kron(e_ii, e_ij) + np.kron(e_ii, e_ji)
                   + np.kron(e_ij, e_ii) + np.kron(e_ji, e_ii))
            a10 += 1j * (np.kron(e_ii, e_ij) - np.kron(e_ii, e_ji)
                         + np.kron(e_ij, e_ii) - np.kron(e_ji, e_ii))
    a8 = np.zeros((d * d, d * d))
    a9 = np.zeros((d * d, d * d))
    a11 = np.zeros((d * d, d * d), dtype=complex)
    e_vec = np.ones(d)
    for i in range(d):
        v = np.zeros(d); v[i] = 1
        ie = np.outer(v, e_vec)      # |i><e|
        ei = np.outer(e_vec, v)      # |e><i|
        a8 += np.kron(ie, ie) + np.kron(ei, ei)
        a9 += np.kron(ei, ie) + np.kron(ie, ei)
        a11 += 1j * (np.kron(ie, ie) - np.kron(ei, ei))
    return (
        np.kron(eye, eye), np.kron(ones, ones),
        np.kron(eye, ones) + np.kron(ones, eye),
        phi_sum, f, t_sum, a7, a8, a9,
        a10, a11,
    )


def gram_closed_form(d: int) -> np.ndarray:
    """The 11 x 11 Gramian tr(A_i A_j) as explicit polynomials in d."""
    g = np.zeros((11, 11))
    g[:9, :9] = np.array([
        [d**2, d**2, 2*d**2, d, d, d, 4*d, 2*d, 2*d],
        [d**2, d**4, 2*d**3, d**2, d**2, d, 4*d**2, 2*d**3, 2*d**3],
        [2*d**2, 2*d**3, 2*d**2 + 2*d**3, 2*d, 2*d, 2*d, 4*d + 4*d**2, 4*d**2, 4*d**2],
        [d, d**2, 2*d, d**2, d, d, 4*d, 2*d**2, 2*d],
        [d, d**2, 2*d, d, d**2, d, 4*d, 2*d, 2*d**2],
        [d, d, 2*d, d, d, d, 4*d, 2*d, 2*d],
        [4*d, 4*d**2, 4*d + 4*d**2, 4*d, 4*d, 4*d, 12*d + 4*d**2, 4*d + 4*d**2, 4*d + 4*d**2],
        [2*d, 2*d**3, 4*d**2, 2*d**2, 2*d, 2*d, 4*d + 4*d**2, 2*d**2 + 2*d**3, 4*d**2],
        [2*d, 2*d**3, 4*d**2, 2*d, 2*d**2, 2*d, 4*d + 4*d**2, 4*d**2, 2*d**2 + 2*d**3],
    ], dtype=float)
    g[9, 9] = g[9, 10] = g[10, 9] = 4*d**2 - 4*d
    g[10, 10] = 2*d**3 - 2*d**2
    return g


def gram_inverse_closed_form(d: int) -> np.ndarray:
    """Block inverse of the Gramian; singular below d = 4."""
    if d < 4:
        raise ValueError(f"Gramian is singular for d = {d} (needs d >= 4)")
    x = d * (d - 1) * (d - 2) * (d - 3)
    block1 = np.array([
        [d**2 - 3*d + 1, 1, -d + 2, 1, 1, -d**2 + d, d - 1, -1, -1],
        [1, 1, -1, 1, 1, -6, 2, -1, -1],
        [-d + 2, -1, (d - 1) / 2, -1, -1, 2*d, -(d + 1) / 2, 1, 1],
        [1, 1, -1, d**2 - 3*d + 1, 1, -d**2 + d, d - 1, -d + 2, -1],
        [1, 1, -1, 1, d**2 - 3*d + 1, -d**2 + d, d - 1, -1, -d + 2],
        [-d**2 + d, -6, 2*d, -d**2 + d, -d**2 + d, d**3 + d**2, -d**2 - d, 2*d, 2*d],
        [d - 1, 2, -(d + 1) / 2, d - 1, d - 1, -d**2 - d, d**2 / 4 + d / 4 + 1,
         -(d + 1) / 2, -(d + 1) / 2],
        [-1, -1, 1, -d + 2, -1, 2*d, -(d + 1) / 2, (d - 1) / 2, 1],
        [-1, -1, 1, -1, -d + 2, 2*d, -(d + 1) / 2, 1, (d - 1) / 2],
    ], dtype=float) / x
    block2 = np.array([[d / 4, -0.5], [-0.5, 0.5]]) / (d * (d - 1) * (d - 2))
    inv = np.zeros((11, 11))
    inv[:9, :9] = block1
    inv[9:, 9:] = block2
    return inv


def commutant_basis(d: int) -> CommutantBasis:
    if d < 4:
        raise ValueError(f"Gramian is singular for d = {d} (needs d >= 4)")
    return CommutantBasis(d, commutant_ops(d), gram_closed_form(d), gram_inverse_closed_form(d))


def commutant_dim_brute(d: int) -> int:
    """Dimension of {X : [X, P (x) P] = 0 for all P, [X, F] = 0} by nullspace
    counting over a generating set (all transpositions and the swap)."""
    if d > 6:
        raise ValueError("brute-force commutant limited to d <= 6")
    gens = []
    for i in range(d):
        for j in range(i + 1, d):
            p = list(range(d))
            p[i], p[j] = p[j], p[i]
            pm = perm_operator(p)
            gens.append(np.kron(pm, pm))
    gens.append(swap_operator(d))
    n = d * d
    m = np.zeros((n * n, n * n))
    eye = np.eye(n)
    for b in gens:
        k = np.kron(eye, b.T) - np.kron(b, eye)   # row-major vec of XB - BX
        m += k.T @ k
    w = np.linalg.eigvalsh(m)
    return int(np.sum(w < 1e-8 * max(w[-1], 1.0)))


def perm_twirl2_brute(mat: np.ndarray, d: int) -> np.ndarray:
    """Exhaustive uniform average of P^t2 M P^t2-dagger over all d! permutations."""
    if d > 7:
        raise ValueError("brute-force permutation twirl limited to d <= 7")
    acc = np.zeros_like(np.asarray(mat, dtype=complex))
    for p in all_perms(d):
        pp = np.kron(perm_operator(p), perm_operator(p))
        acc += pp @ mat @ pp.T
    return acc / factorial(d)


def perm_twirl2_exact(mat: np.ndarray, d: int) -> PermTwirlResult:
    """Permutation twirl through the commutant expansion
    sum_ij Ginv_ij tr(M A_i) A_j.

    Valid for Hermitian M that are symmetric under exchanging the two copies
    (F M F = M); the twirl of such an operator lies in the 11-dimensional
    commutant, where the Gramian projection is exact.
    """
    basis = commutant_basis(d)
    mat = np.asarray(mat, dtype=complex)
    require_hermitian(mat, "twirl input")
    f = basis.ops[4]
    scale = max(1.0, np.abs(mat).max())
    if np.abs(f @ mat @ f - mat).max() > 1e-10 * scale:
        raise ValueError("commutant expansion needs a swap-symmetric input (F M F = M)")
    traces = np.array([np.trace(mat @ a) for a in basis.ops])
    coeffs = basis.gram_inv @ traces
    rec = sum(c * a for c, a in zip(coeffs, basis.ops))
    return PermTwirlResult(coeffs, rec)
