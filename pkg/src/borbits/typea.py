"""Finite-field cross-check for type A orbit combinatorics.

An abelian ideal of strictly upper triangular matrices is a set of slots
(i, j) above the diagonal, upward closed for interval containment and with
no two slots chaining as (i, j), (j, k).  Over a small prime field the
Borel conjugation orbits on the ideal can be enumerated outright with a
union-find; conjugation factors through the adjoint group, so the torus
generators are single-slot diagonals rather than determinant-one ones.

The combinatorial side predicts one orbit per orthogonal subset S of the
ideal roots, with 0/1 representative matrices, and an orbit dimension given
by the involution invariant L of the shifted set.  Rational point counts
can only be compared heuristically: class counts over F_q may exceed the
geometric orbit count when stabilizers are disconnected, so equality of
counts and the log-fit dimension estimates are reported, while the
assertions are the two unconditional facts (representatives land in
pairwise distinct classes, and the F_q class count is at least the
combinatorial one).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product

from .affine import AffineRoot, AffineWeylGroup
from .involutions import involution_length, orthogonal_subsets, reflection_product
from .minuscule import enumerate_abelian_ideals
from .roots import Root, RootSystem, build_root_system

__all__ = [
    "MatrixIdealContext",
    "OrbitPartition",
    "make_context",
    "ideal_positions",
    "enumerate_orbits",
    "estimate_dimensions",
    "oracle_report",
    "ELEMENT_CAP",
]

ALLOWED_PRIMES = (2, 3, 5, 7)
ELEMENT_CAP = 10**7

Position = tuple[int, int]


@dataclass(frozen=True)
class MatrixIdealContext:
    """Slots of an abelian ideal of strictly upper triangular n x n matrices
    over F_q."""

    n: int
    q: int
    positions: tuple[Position, ...]

    @property
    def element_count(self) -> int:
        return self.q ** len(self.positions)


def make_context(n: int, q: int, positions) -> MatrixIdealContext:
    if not 2 <= n <= 4:
        raise ValueError("n must be between 2 and 4")
    if q not in ALLOWED_PRIMES:
        raise ValueError(f"q must be one of {ALLOWED_PRIMES}")
    pos = tuple(sorted((int(i), int(j)) for i, j in positions))
    pset = set(pos)
    for i, j in pos:
        if not 1 <= i < j <= n:
            raise ValueError(f"bad slot {(i, j)}")
    for i, j in pos:
        for k, l in product(range(1, n + 1), repeat=2):
            if k < l and k <= i and j <= l and (k, l) not in pset:
                raise ValueError("slots are not upward closed")
    for i, j in pos:
        for k, l in pos:
            if j == k:
                raise ValueError("slots are not sum-free")
    ctx = MatrixIdealContext(n, q, pos)
    if ctx.element_count > ELEMENT_CAP:
        raise ValueError("element count exceeds the enumeration cap")
    return ctx


def _typea_system(n: int) -> RootSystem:
    return build_root_system("A", n - 1)


def root_to_position(root: Root) -> Position:
    """The root with consecutive coordinate ones from i to j-1 sits in
    matrix slot (i, j)."""
    ones = [k for k, c in enumerate(root.coeffs) if c == 1]
    if not ones or any(c not in (0, 1) for c in root.coeffs):
        raise ValueError(f"{root} is not a type A positive root")
    if ones != list(range(ones[0], ones[-1] + 1)):
        raise ValueError(f"{root} is not an interval root")
    return (ones[0] + 1, ones[-1] + 2)


def position_to_root(rs: RootSystem, pos: Position) -> Root:
    i, j = pos
    return rs.root(
        tuple(1 if i - 1 <= k <= j - 2 else 0 for k in range(rs.rank))
    )


def ideal_positions(n: int, ideal_id: int) -> tuple[Position, ...]:
    """Slots of the ideal with the given id in the canonical enumeration of
    abelian ideals of A_{n-1}."""
    ideals = enumerate_abelian_ideals(_typea_system(n))
    if not 0 <= ideal_id < len(ideals):
        raise ValueError(f"ideal id {ideal_id} out of range (0..{len(ideals) - 1})")
    return tuple(sorted(root_to_position(r) for r in ideals[ideal_id].roots))


@dataclass(frozen=True)
class OrbitPartition:
    """Conjugation classes of the ideal under the Borel group of SL_n(F_q)."""

    context: MatrixIdealContext
    classes: tuple[tuple[tuple[int, ...], ...], ...]
    sizes: tuple[int, ...]
    representatives: tuple[tuple[int, ...], ...]

    def class_of(self, vec: tuple[int, ...]) -> int:
        for k, cls in enumerate(self.classes):
            if vec in cls:
                return k
        raise KeyError(vec)


def _mat_mul(a, b, n: int, q: int):
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % q for j in range(n))
        for i in range(n)
    )


def _identity(n: int):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _borel_generators(n: int, q: int):
    """Pairs (g, g inverse): single-slot diagonal tori and all elementary
    unipotents, every nonidentity field value.  Conjugation by the center is
    trivial, so this realizes the adjoint Borel action on the ideal; the
    determinant-one torus would be strictly smaller on rational points (for
    SL_2 it only scales by squares)."""
    gens = []
    ident = _identity(n)
    for k in range(n):
        for t in range(2, q):
            tinv = pow(t, q - 2, q)
            g = [list(row) for row in ident]
            gi = [list(row) for row in ident]
            g[k][k] = t
            gi[k][k] = tinv
            gens.append((tuple(map(tuple, g)), tuple(map(tuple, gi))))
    for i in range(n):
        for j in range(i + 1, n):
            for t in range(1, q):
                g = [list(row) for row in ident]
                gi = [list(row) for row in ident]
                g[i][j], gi[i][j] = t, (q - t) % q
                gens.append((tuple(map(tuple, g)), tuple(map(tuple, gi))))
    return gens


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x: int, y: int) -> None:
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[y] = x


def enumerate_orbits(ctx: MatrixIdealContext) -> OrbitPartition:
    """Partition all F_q points of the ideal under conjugation by the Borel
    generators, then re-check that every generator keeps each class inside
    itself."""
    if ctx.element_count > ELEMENT_CAP:
        raise ValueError("element count exceeds the enumeration cap")
    n, q = ctx.n, ctx.q
    vectors = list(product(range(q), repeat=len(ctx.positions)))
    index = {v: k for k, v in enumerate(vectors)}
    gens = _borel_generators(n, q)

    def conjugate(pair, vec):
        g, gi = pair
        x = [[0] * n for _ in range(n)]
        for (i, j), val in zip(ctx.positions, vec):
            x[i - 1][j - 1] = val
        y = _mat_mul(_mat_mul(g, tuple(map(tuple, x)), n, q), gi, n, q)
        out = tuple(y[i - 1][j - 1] for i, j in ctx.positions)
        support = {(i - 1, j - 1) for i, j in ctx.positions}
        for a in range(n):
            for b in range(n):
                if (a, b) not in support and y[a][b] % q:
                    raise AssertionError("conjugation left the ideal")
        return out

    uf = _UnionFind(len(vectors))
    for vec in vectors:
        k = index[vec]
        for pair in gens:
            uf.union(k, index[conjugate(pair, vec)])
    grouped: dict[int, list[tuple[int, ...]]] = {}
    for vec in vectors:
        grouped.setdefault(uf.find(index[vec]), []).append(vec)
    classes = tuple(
        tuple(sorted(cls)) for cls in sorted(grouped.values(), key=lambda c: min(c))
    )
    member = {}
    for k, cls in enumerate(classes):
        for vec in cls:
            member[vec] = k
    for vec in vectors:
        for pair in gens:
            if member[conjugate(pair, vec)] != member[vec]:
                raise AssertionError("orbit partition is not generator closed")
    return OrbitPartition(
        ctx,
        classes,
        tuple(len(c) for c in classes),
        tuple(c[0] for c in classes),
    )


def _subset_key(positions: tuple[Position, ...]) -> str:
    return "{" + ",".join(f"({i},{j})" for i, j in sorted(positions)) + "}"


def _ideal_subsets(n: int, positions: tuple[Position, ...]):
    """Orthogonal subsets of the ideal as position tuples, with their
    combinatorial dimension L; two interval roots are orthogonal exactly
    when their index pairs are disjoint."""
    rs = _typea_system(n)
    group = AffineWeylGroup(rs)
    roots = [position_to_root(rs, p) for p in positions]
    subsets = orthogonal_subsets(rs, [AffineRoot(r, -1) for r in roots])
    out = []
    for s in subsets:
        pos = tuple(sorted(root_to_position(a.finite) for a in s.roots))
        big_l = involution_length(group, reflection_product(group, s))
        out.append((pos, big_l))
    return out


def _e_s_vector(ctx: MatrixIdealContext, subset: tuple[Position, ...]) -> tuple[int, ...]:
    chosen = set(subset)
    return tuple(1 if p in chosen else 0 for p in ctx.positions)


def estimate_dimensions(
    n: int, positions: tuple[Position, ...], q_list: tuple[int, ...]
) -> dict:
    """Log-ratio dimension estimates for every orthogonal subset.

    For each consecutive prime pair the estimate is
    round(log(size2/size1) / log(q2/q1)); the reported figure is the one
    from the largest pair, which is the least biased by the (q - 1) factors
    that orbit sizes carry at small primes.
    """
    if len(q_list) < 2:
        raise ValueError("dimension estimation needs at least two primes")
    partitions = {
        q: enumerate_orbits(make_context(n, q, positions)) for q in q_list
    }
    out = {}
    for subset, big_l in _ideal_subsets(n, positions):
        sizes = {}
        for q, part in partitions.items():
            vec = _e_s_vector(part.context, subset)
            sizes[q] = part.sizes[part.class_of(vec)]
        pair_estimates = []
        for q1, q2 in zip(q_list, q_list[1:]):
            if sizes[q1] == sizes[q2]:
                est = 0.0
            else:
                est = math.log(sizes[q2] / sizes[q1]) / math.log(q2 / q1)
            pair_estimates.append(round(est))
        out[_subset_key(subset)] = {
            "sizes": sizes,
            "pair_estimates": pair_estimates,
            "estimate": pair_estimates[-1],
            "expected_L": big_l,
        }
    return out


def oracle_report(n: int, ideal_id: int, q_list) -> list[dict]:
    """One flat report object per prime: class counts against the
    combinatorial orbit count, with the two hard assertions built in, plus
    the dimension estimates when at least two primes were given."""
    q_list = tuple(q_list)
    positions = ideal_positions(n, ideal_id)
    subsets = _ideal_subsets(n, positions)
    combinatorial = len(subsets)
    dims = None
    if len(q_list) >= 2:
        details = estimate_dimensions(n, positions, q_list)
        dims = {key: info["estimate"] for key, info in details.items()}
    expected = {_subset_key(pos): big_l for pos, big_l in subsets}
    reports = []
    for q in q_list:
        part = enumerate_orbits(make_context(n, q, positions))
        rep_classes = set()
        for subset, _ in subsets:
            rep_classes.add(part.class_of(_e_s_vector(part.context, subset)))
        if len(rep_classes) != combinatorial:
            raise AssertionError("representatives are not pairwise inequivalent")
        if len(part.classes) < combinatorial:
            raise AssertionError("fewer classes than orthogonal subsets")
        reports.append(
            {
                "n": n,
                "q": q,
                "ideal": [list(p) for p in positions],
                "classes": len(part.classes),
                "combinatorial": combinatorial,
                "dims": dims,
                "expected_L": expected,
            }
        )
    return reports
