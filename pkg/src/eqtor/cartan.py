"""Affine root data for the simply-laced types A^(1), D^(1), E^(1).

Provides Cartan matrices, the cyclic deformation matrix used for A-type,
weight/coweight pairings, dynamical-weight bookkeeping, and the twisted
group-algebra cocycle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class CartanData:
    """Affine generalized Cartan matrix with its deformation data.

    ``a`` is the Cartan matrix over the index set I = {0, .., n}, ``m`` the
    cyclic twist matrix (nonzero only for A-type), ``colabels`` the null
    vector of a (so a . colabels = 0), and d the symmetrizers (all 1 here).
    """

    tag: str
    a: tuple[tuple[int, ...], ...]
    m: tuple[tuple[int, ...], ...]
    colabels: tuple[int, ...]
    d: tuple[int, ...]

    @property
    def index_set(self) -> range:
        return range(len(self.a))

    @property
    def rank(self) -> int:
        return len(self.a) - 1

    def b(self, i: int, j: int) -> int:
        """Symmetrized matrix entry b_ij = d_i a_ij."""
        return self.d[i] * self.a[i][j]

    def adjacent_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in self.index_set for j in self.index_set
                if i != j and self.a[i][j] != 0]

    def level1_fundamental_indices(self) -> tuple[int, ...]:
        """Indices a for which e^{bar Lambda_a} generates an inequivalent
        irreducible lattice module at level 1."""
        n = self.rank
        if self.tag.startswith("A"):
            return tuple(range(n + 1))
        if self.tag.startswith("D"):
            return (0, 1, n - 1, n)
        return {"E6": (0, 1, 2), "E7": (0, 1), "E8": (0,)}[self.tag]


def _cycle_matrix(n: int) -> list[list[int]]:
    a = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        a[i][i] = 2
        a[i][(i + 1) % (n + 1)] -= 1
        a[i][(i - 1) % (n + 1)] -= 1
    return a


def _from_edges(size: int, edges: Sequence[tuple[int, int]]) -> list[list[int]]:
    a = [[0] * size for _ in range(size)]
    for i in range(size):
        a[i][i] = 2
    for i, j in edges:
        a[i][j] = -1
        a[j][i] = -1
    return a


def _null_vector(a: list[list[int]]) -> tuple[int, ...]:
    """Positive integer null vector of the affine Cartan matrix."""
    size = len(a)
    rows = [[Fraction(a[i][j]) for j in range(size)] for i in range(size)]
    # Gaussian elimination; the kernel is one-dimensional for affine type.
    aug = [row[:] for row in rows]
    piv_cols = []
    r = 0
    for c in range(size):
        piv = next((i for i in range(r, size) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(size):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
        if r == size:
            break
    free = [c for c in range(size) if c not in piv_cols]
    if len(free) != 1:
        raise ValueError("Cartan matrix does not have a one-dimensional kernel")
    sol = [Fraction(0)] * size
    sol[free[0]] = Fraction(1)
    for rr, c in enumerate(piv_cols):
        sol[c] = -aug[rr][free[0]]
    den = 1
    for x in sol:
        den = den * x.denominator // _gcd(den, x.denominator) if x.denominator != 1 else den
    vals = [int(x * den) for x in sol]
    if all(v < 0 for v in vals):
        vals = [-v for v in vals]
    g = 0
    for v in vals:
        g = _gcd(g, abs(v))
    vals = [v // g for v in vals]
    if any(v <= 0 for v in vals):
        raise ValueError("null vector is not positive")
    return tuple(vals)


def _gcd(x: int, y: int) -> int:
    while y:
        x, y = y, x % y
    return x


_EDGE_TABLES = {
    # finite-diagram edges plus the affine node 0 attachment
    "E6": [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 0)],
    "E7": [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (3, 7), (1, 0)],
    "E8": [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8), (1, 0)],
}


def cartan_data(tag: str) -> CartanData:
    """Root data for a supported simply-laced affine type tag ('A2', 'D4', 'E6', ...)."""
    mt = re.fullmatch(r"([ADE])(\d+)", tag.strip())
    if not mt:
        raise ValueError(f"unrecognized type tag {tag!r}")
    fam, n = mt.group(1), int(mt.group(2))
    if fam == "A":
        if n < 2:
            raise ValueError("A-type needs rank >= 2 (three or more nodes)")
        a = _cycle_matrix(n)
        size = n + 1
        m = [[0] * size for _ in range(size)]
        for i in range(size):
            for j in range(size):
                m[i][j] = (1 if (i - (j + 1)) % size == 0 else 0) - (1 if ((i + 1) - j) % size == 0 else 0)
    elif fam == "D":
        if n < 4:
            raise ValueError("D-type needs rank >= 4")
        edges = [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, n - 1)] + [(n - 2, n)]
        a = _from_edges(n + 1, edges)
        m = [[0] * (n + 1) for _ in range(n + 1)]
    elif fam == "E":
        if n not in (6, 7, 8):
            raise ValueError("E-type rank must be 6, 7 or 8")
        a = _from_edges(n + 1, _EDGE_TABLES[f"E{n}"])
        m = [[0] * (n + 1) for _ in range(n + 1)]
    colabels = _null_vector(a)
    data = CartanData(
        tag=f"{fam}{n}",
        a=tuple(tuple(row) for row in a),
        m=tuple(tuple(row) for row in m),
        colabels=colabels,
        d=tuple(1 for _ in range(n + 1)),
    )
    for i in data.index_set:
        if sum(data.a[i][j] * data.colabels[j] for j in data.index_set) != 0:
            raise ValueError(f"colabels are not a null vector for {tag}")
    return data


def gl_cartan(n_colors: int) -> CartanData:
    """Root data attached to the rank-N torus algebra: the A_{N-1} affine cycle."""
    if n_colors < 3:
        raise ValueError("need at least three colors")
    return cartan_data(f"A{n_colors - 1}")


# ---------------------------------------------------------------------------
# weight / coweight pairing
# ---------------------------------------------------------------------------

def pair(weight: dict, coweight: dict, data: CartanData) -> int:
    """Canonical pairing of a weight expression with a coweight expression.

    Weights are dicts over the symbols 'alpha:i', 'flam:i' (the finite
    fundamental weights, with flam:0 = 0), 'Lambda0' and 'delta'; coweights
    over 'h:i', 'c' and 'd'.  Nonzero pairings: <alpha_j, h_i> = a_ij,
    <alpha_0, d> = 1, <flam_i, h_j> = delta_ij (i >= 1), <Lambda0, c> = 1,
    <delta, d> = 1.
    """
    total = 0
    for wsym, wc in weight.items():
        if wc == 0:
            continue
        for csym, cc in coweight.items():
            if cc == 0:
                continue
            total += wc * cc * _pair_symbols(wsym, csym, data)
    return total


def _pair_symbols(wsym: str, csym: str, data: CartanData) -> int:
    if wsym.startswith("alpha:"):
        j = int(wsym.split(":")[1])
        if csym.startswith("h:"):
            return data.a[int(csym.split(":")[1])][j]
        if csym == "d":
            return 1 if j == 0 else 0
        return 0
    if wsym.startswith("flam:"):
        i = int(wsym.split(":")[1])
        if i == 0:
            return 0
        if csym.startswith("h:"):
            return 1 if int(csym.split(":")[1]) == i else 0
        return 0
    if wsym == "Lambda0":
        return 1 if csym == "c" else 0
    if wsym == "delta":
        return 1 if csym == "d" else 0
    raise ValueError(f"unknown weight symbol {wsym!r}")


def alpha(j: int) -> dict:
    return {f"alpha:{j}": 1}


def fundamental(i: int) -> dict:
    return {f"flam:{i}": 1}


def coroot(i: int) -> dict:
    return {f"h:{i}": 1}


# ---------------------------------------------------------------------------
# dynamical weights
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DynWeight:
    """Accumulated (root-lattice, R_Q-lattice) shift of an operator string.

    ``root`` tracks the h-side weight as coefficients of the simple roots;
    ``rq`` tracks the shift lattice as coefficients of the Q_i.  Both add
    under composition.
    """

    root: tuple[int, ...]
    rq: tuple[int, ...]

    @classmethod
    def zero(cls, size: int) -> "DynWeight":
        return cls((0,) * size, (0,) * size)

    def __add__(self, other: "DynWeight") -> "DynWeight":
        return DynWeight(
            tuple(x + y for x, y in zip(self.root, other.root)),
            tuple(x + y for x, y in zip(self.rq, other.rq)),
        )

    def shifted(self, color: int, droot: int, drq: int) -> "DynWeight":
        root = list(self.root)
        rq = list(self.rq)
        root[color] += droot
        rq[color] += drq
        return DynWeight(tuple(root), tuple(rq))

    def pair_root(self, mu: Sequence[int], data: CartanData) -> int:
        """<accumulated root weight, sum mu_i h_i>."""
        return sum(self.root[j] * mu[i] * data.a[i][j]
                   for i in data.index_set for j in data.index_set)

    def pair_rq(self, mu: Sequence[int], data: CartanData) -> int:
        """<accumulated Q-shift, sum mu_i P_i> under <Q_i, P_j> = a_ij."""
        return sum(self.rq[i] * mu[j] * data.a[i][j]
                   for i in data.index_set for j in data.index_set)


# ---------------------------------------------------------------------------
# twisted group-algebra cocycle
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cocycle:
    """Bimultiplicative two-cocycle on the root lattice.

    On simple roots, value(alpha_i, alpha_j) = 1 for i <= j and
    (-1)^{a_ij} kappa^{-m_ij} for i > j, so that

        e^{alpha_i} e^{alpha_j} = (-1)^{a_ij} kappa^{-m_ij} e^{alpha_j} e^{alpha_i}.

    The ordering 0 < 1 < ... is one admissible gauge; any bimultiplicative
    choice with these commutator ratios twists the group algebra the same way.
    """

    data: CartanData

    def sign_kappa(self, beta1: Sequence[int], beta2: Sequence[int]) -> tuple[int, int]:
        """Exact value as (sign, kappa_exponent)."""
        sgn_exp = 0
        kexp = 0
        for i in self.data.index_set:
            if not beta1[i]:
                continue
            for j in self.data.index_set:
                if j < i and beta2[j]:
                    sgn_exp += self.data.a[i][j] * beta1[i] * beta2[j]
                    kexp += -self.data.m[i][j] * beta1[i] * beta2[j]
        return (-1) ** (sgn_exp % 2), kexp

    def value(self, beta1: Sequence[int], beta2: Sequence[int], kappa: complex) -> complex:
        sgn, kexp = self.sign_kappa(beta1, beta2)
        return sgn * kappa ** kexp


def cocycle_build(data: CartanData) -> Cocycle:
    if any(d != 1 for d in data.d):
        raise ValueError("cocycle twist requires simply-laced data")
    return Cocycle(data)
