"""Root-system data for the finite simple series A, B, C, D, E6, E7.

Weights are integer coefficient vectors over the simple roots (plain
tuples).  Node indices are 1-based everywhere, matching the usual
Bourbaki numbering; see docs/conventions.md.
"""

from __future__ import annotations

from dataclasses import dataclass


class ConfigError(Exception):
    """Invalid (series, rank, node) configuration."""


SERIES = ("A", "B", "C", "D", "E6", "E7")

Weight = tuple  # integer coefficients over simple roots


def weight_add(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def weight_sub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def weight_height(a: Weight) -> int:
    return sum(a)


def _edges(series: str, rank: int):
    """Dynkin-diagram edges with multiplicity markers.

    Returns (adjacency list, symmetrizers d_i).  Arrows: for B the last
    node is the short root, for C the last node is the long root.
    """
    if series == "A":
        if rank < 1:
            raise ConfigError("A series requires rank >= 1")
        chain = [(i, i + 1) for i in range(1, rank)]
        return chain, [1] * rank
    if series == "B":
        if rank < 2:
            raise ConfigError("B series requires rank >= 2")
        chain = [(i, i + 1) for i in range(1, rank)]
        return chain, [2] * (rank - 1) + [1]
    if series == "C":
        if rank < 2:
            raise ConfigError("C series requires rank >= 2")
        chain = [(i, i + 1) for i in range(1, rank)]
        return chain, [1] * (rank - 1) + [2]
    if series == "D":
        if rank < 4:
            raise ConfigError("D series requires rank >= 4")
        edges = [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
        return edges, [1] * rank
    if series == "E6":
        if rank != 6:
            raise ConfigError("E6 has rank 6")
        return [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)], [1] * 6
    if series == "E7":
        if rank != 7:
            raise ConfigError("E7 has rank 7")
        return [(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)], [1] * 7
    raise ConfigError(f"unknown series {series!r}")


@dataclass(frozen=True)
class CartanData:
    """Cartan matrix, symmetrized bilinear form, and root data for one type."""

    series: str
    rank: int
    cartan_matrix: tuple
    symmetrizers: tuple
    bilinear: tuple
    positive_roots: tuple
    highest_root: Weight
    cominuscule_nodes: frozenset

    def simple_root(self, i: int) -> Weight:
        """alpha_i as a coefficient vector (1-based i)."""
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def pairing(self, mu: Weight, nu: Weight) -> int:
        """Symmetric bilinear form (mu, nu) on the root lattice."""
        total = 0
        for i, ci in enumerate(mu):
            if ci:
                row = self.bilinear[i]
                for j, cj in enumerate(nu):
                    if cj:
                        total += ci * cj * row[j]
        return total

    def root_norm(self, i: int) -> int:
        """(alpha_i, alpha_i) for a 1-based node."""
        return self.bilinear[i - 1][i - 1]

    def positive_roots_with_unit_coefficient(self, x: int):
        """Positive roots whose alpha_x coefficient equals 1 (1-based x)."""
        if x not in self.cominuscule_nodes:
            raise ConfigError(
                f"node {x} is not cominuscule for {self.series}{self.rank}")
        return [r for r in self.positive_roots if r[x - 1] == 1]

    def levi_nodes(self, x: int):
        """Complement of {x}: the nodes generating the Levi subalgebra."""
        return [j for j in range(1, self.rank + 1) if j != x]


def _generate_positive_roots(cartan, rank):
    """Close the simple roots under root-string addition.

    beta + alpha_i is a root iff p - <beta, alpha_i^vee> > 0, where p is
    the largest k with beta - k*alpha_i a root; breadth-first by height.
    """
    simple = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
    roots = set(simple)
    level = list(simple)
    while level:
        nxt = []
        for beta in level:
            for i in range(rank):
                pairing = sum(beta[j] * cartan[i][j] for j in range(rank))
                p = 0
                gamma = weight_sub(beta, simple[i])
                while gamma in roots:
                    p += 1
                    gamma = weight_sub(gamma, simple[i])
                if p - pairing > 0:
                    cand = weight_add(beta, simple[i])
                    if cand not in roots:
                        roots.add(cand)
                        nxt.append(cand)
        level = nxt
    return sorted(roots, key=lambda r: (weight_height(r), r))


def build(series: str, rank: int) -> CartanData:
    """Construct the full root datum for one (series, rank)."""
    series = series.upper()
    edges, d = _edges(series, rank)
    adj = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)

    # a_ij = 2 (alpha_i, alpha_j) / (alpha_i, alpha_i) with (alpha_i, alpha_j)
    # = -max(d_i, d_j) on diagram edges, for the normalization (short, short) = 2.
    bil = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        bil[i][i] = 2 * d[i]
    for a, b in edges:
        v = -max(d[a - 1], d[b - 1])
        bil[a - 1][b - 1] = v
        bil[b - 1][a - 1] = v
    cartan = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(rank):
            num = 2 * bil[i][j]
            if num % bil[i][i]:
                raise ConfigError("non-integral Cartan entry")
            cartan[i][j] = num // bil[i][i]

    roots = _generate_positive_roots(cartan, rank)
    by_height = max(roots, key=weight_height)
    # the highest root dominates every other positive root
    for r in roots:
        if any(c < 0 for c in weight_sub(by_height, r)):
            raise ConfigError("no dominant highest root; root generation broken")
    cominuscule = frozenset(
        i + 1 for i in range(rank) if by_height[i] == 1)

    return CartanData(
        series=series,
        rank=rank,
        cartan_matrix=tuple(tuple(row) for row in cartan),
        symmetrizers=tuple(d),
        bilinear=tuple(tuple(row) for row in bil),
        positive_roots=tuple(roots),
        highest_root=by_height,
        cominuscule_nodes=cominuscule,
    )
