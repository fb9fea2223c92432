"""Symmetric group machinery: permutation operators, characters, hook lengths,
and pairwise-independent permutation families over GF(2^n).

Permutations are tuples p with p[j] the image of j; partitions are
non-increasing tuples; a cycle type is the tuple (k_1, ..., k_d) of
multiplicities with sum i*k_i = d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, prod

import numpy as np

MAX_ENUM_D = 8          # guard for full S_d enumeration
MAX_DIAMOND_D = 7       # guard for the exhaustive classical diamond norm

# fixed irreducible polynomials for GF(2^n), as bitmasks (degree n term included)
GF2_POLY = {1: 0b11, 2: 0b111, 3: 0b1011, 4: 0b10011, 5: 0b100101, 6: 0b1000011}


def check_permutation(p) -> tuple[int, ...]:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(len(p))):
        raise ValueError(f"{p} is not a permutation of 0..{len(p) - 1}")
    return p


def perm_operator(p) -> np.ndarray:
    """0/1 matrix with P[i, j] = 1 iff p(j) = i."""
    p = check_permutation(p)
    d = len(p)
    m = np.zeros((d, d))
    for j in range(d):
        m[p[j], j] = 1.0
    return m


def compose(p, q):
    """(p o q)(x) = p(q(x))."""
    return tuple(p[q[x]] for x in range(len(p)))


def inverse(p):
    inv = [0] * len(p)
    for j, i in enumerate(p):
        inv[i] = j
    return tuple(inv)


def all_perms(d: int):
    """All d! permutations in lexicographic order."""
    if d > MAX_ENUM_D:
        raise ValueError(f"enumeration of S_{d} refused (d > {MAX_ENUM_D})")
    return (tuple(p) for p in itertools.permutations(range(d)))


def cycle_type(p) -> tuple[int, ...]:
    """Multiplicities (k_1, ..., k_d) of cycle lengths."""
    p = check_permutation(p)
    d = len(p)
    seen = [False] * d
    counts = [0] * d
    for start in range(d):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        counts[length - 1] += 1
    return tuple(counts)


def cycle_lengths(counts) -> tuple[int, ...]:
    """Cycle-length multiset from a multiplicity tuple, longest first."""
    out = []
    for length, k in enumerate(counts, start=1):
        out.extend([length] * k)
    return tuple(sorted(out, reverse=True))


def partitions(d: int):
    """All partitions of d, non-increasing tuples, lexicographically descending."""
    def gen(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail
    return list(gen(d, d))


def partition_to_counts(lam) -> tuple[int, ...]:
    d = sum(lam)
    counts = [0] * d
    for part in lam:
        counts[part - 1] += 1
    return tuple(counts)


def class_size(counts) -> int:
    """Size of the conjugacy class with the given cycle multiplicities."""
    d = sum((i + 1) * k for i, k in enumerate(counts))
    z = prod((i + 1) ** k * factorial(k) for i, k in enumerate(counts))
    return factorial(d) // z


@lru_cache(maxsize=None)
def _mn(lam: tuple, cycles: tuple) -> int:
    """Murnaghan-Nakayama recursion over border strips, longest cycle first."""
    if not lam:
        return 1
    r = cycles[0]
    rest = cycles[1:]
    ell = len(lam)
    beta = [lam[i] + (ell - 1 - i) for i in range(ell)]  # strictly decreasing
    beta_set = set(beta)
    total = 0
    for i, b in enumerate(beta):
        nb = b - r
        if nb < 0 or nb in beta_set:
            continue
        crossed = sum(1 for c in beta if nb < c < b)
        new_beta = sorted([c for c in beta if c != b] + [nb], reverse=True)
        new_lam = tuple(c - (len(new_beta) - 1 - j) for j, c in enumerate(new_beta))
        new_lam = tuple(x for x in new_lam if x > 0)
        total += (-1) ** crossed * _mn(new_lam, rest)
    return total


def mn_character(lam, counts) -> int:
    """Character of the irrep `lam` of S_d on the class with multiplicities `counts`."""
    lam = tuple(int(x) for x in lam)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or any(x <= 0 for x in lam):
        raise ValueError(f"{lam} is not a partition")
    d = sum(lam)
    if sum((i + 1) * k for i, k in enumerate(counts)) != d:
        raise ValueError("cycle type does not match the partition size")
    return _mn(lam, cycle_lengths(counts))


def char_closed_forms(d: int, counts):
    """Characters of (d), (d-1,1), (d-2,1,1), (d-2,2) via the closed polynomials in k1, k2."""
    if d < 4:
        raise ValueError("closed forms need d >= 4")
    k1 = counts[0]
    k2 = counts[1] if len(counts) > 1 else 0
    return (
        1,
        k1 - 1,
        (k1 - 1) * (k1 - 2) // 2 - k2,
        k1 * (k1 - 3) // 2 + k2,
    )


def chi_r(d: int, counts, s2_class) -> int:
    """Character of the joint permutation/swap representation on (class, S2-class).

    s2_class is the cycle-multiplicity pair of S_2: (2, 0) identity, (0, 1) swap.
    """
    if d < 2:
        raise ValueError("needs d >= 2")
    k1 = counts[0]
    k2 = counts[1] if len(counts) > 1 else 0
    if tuple(s2_class) == (2, 0):
        return k1 * k1
    if tuple(s2_class) == (0, 1):
        return k1 + 2 * k2
    raise ValueError(f"unknown S2 class {s2_class}")


def hook_dimension(lam) -> int:
    """Dimension of the irrep via the hook length formula."""
    lam = tuple(int(x) for x in lam)
    d = sum(lam)
    conj = [sum(1 for part in lam if part > j) for j in range(lam[0])] if lam else []
    hooks = 1
    for i, part in enumerate(lam):
        for j in range(part):
            hooks *= (part - j) + (conj[j] - i) - 1
    return factorial(d) // hooks


# ---------------------------------------------------------------------------
# permutation families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PermFamily:
    perms: tuple
    weights: np.ndarray = field(default=None)

    def __post_init__(self):
        perms = tuple(check_permutation(p) for p in self.perms)
        object.__setattr__(self, "perms", perms)
        if self.weights is None:
            w = np.full(len(perms), 1.0 / len(perms))
        else:
            w = np.asarray(self.weights, dtype=float)
        if w.shape != (len(perms),) or abs(w.sum() - 1.0) > 1e-12:
            raise ValueError("weights must match the members and sum to 1")
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.perms)


def gf2_mul(a: int, b: int, n: int) -> int:
    """Carry-less multiplication modulo the fixed irreducible polynomial."""
    poly = GF2_POLY[n]
    out = 0
    while b:
        if b & 1:
            out ^= a
        b >>= 1
        a <<= 1
        if a >> n & 1:
            a ^= poly
    return out


def affine_family(n: int) -> PermFamily:
    """All x -> a*x + b over GF(2^n) with a != 0; (2^n - 1) * 2^n permutations."""
    if not 1 <= n <= 6:
        raise ValueError("bit width must be in 1..6")
    d = 1 << n
    members = []
    for a in range(1, d):
        for b in range(d):
            members.append(tuple(gf2_mul(a, x, n) ^ b for x in range(d)))
    return PermFamily(tuple(members))


def pairwise_dependence(fam: PermFamily, d: int) -> float:
    """Worst-case statistical distance (un-halved) of the induced pair
    distribution from uniform over ordered distinct pairs."""
    if d < 2:
        raise ValueError("needs d >= 2")
    n_pairs = d * (d - 1)
    uniform = 1.0 / n_pairs
    # dist[x1*d+x2, y1*d+y2] built by scanning the family once
    dist = np.zeros((d * d, d * d))
    for p, w in zip(fam.perms, fam.weights):
        arr = np.array(p)
        out = arr[:, None] * d + arr[None, :]
        src = np.arange(d)[:, None] * d + np.arange(d)[None, :]
        dist[src.ravel(), out.ravel()] += w
    worst = 0.0
    for x1 in range(d):
        for x2 in range(d):
            if x1 == x2:
                continue
            row = dist[x1 * d + x2]
            dev = 0.0
            for y1 in range(d):
                for y2 in range(d):
                    if y1 == y2:
                        dev += row[y1 * d + y2]
                    else:
                        dev += abs(row[y1 * d + y2] - uniform)
            worst = max(worst, dev)
    return worst


def _pair_distributions(perms, weights, d):
    dist = np.zeros((d * d, d * d))
    for p, w in zip(perms, weights):
        arr = np.array(p)
        out = arr[:, None] * d + arr[None, :]
        src = np.arange(d)[:, None] * d + np.arange(d)[None, :]
        dist[src.ravel(), out.ravel()] += w
    return dist


def classical_diamond_distance(fam: PermFamily, d: int) -> float:
    """Classical diamond distance between the family's pair-moment map and the
    full-group one, maximized over the d^2 classical basis inputs.

    The full-group reference is computed by exhaustive summation over S_d.
    """
    if d < 2:
        raise ValueError("needs d >= 2")
    if d > MAX_DIAMOND_D:
        raise ValueError(f"exhaustive reference refused for d > {MAX_DIAMOND_D}")
    dist_w = _pair_distributions(fam.perms, fam.weights, d)
    group = list(all_perms(d))
    dist_h = _pair_distributions(group, np.full(len(group), 1.0 / len(group)), d)
    return float(np.abs(dist_w - dist_h).sum(axis=1).max())
