"""Involutions attached to orthogonal sets of real affine roots.

An orthogonal set S of real roots determines the involution given by the
product of its (commuting) reflections.  This module computes those
involutions, their length-like invariant ``(coxeter length + rank of
id - sigma) / 2``, the twisted conjugation ``s . sigma`` by a simple
reflection, the classification of descents of admissible pairs into
real/complex and finite/affine kinds, and the four-case descent move that
lowers an admissible pair along a descent.

Two consistency checks that are easy to get wrong are kept close to the
data: every root sent to its negative by the involution of an orthogonal
subset of an inversion set must be a half sum of two support roots, and
within an inversion set the support is recoverable from the involution.
Both are exposed as report-producing operations so negative examples can be
exercised as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional

from .affine import AffineRoot, AffineWeylElement, AffineWeylGroup
from .minuscule import MinusculeElement, weak_order_leq
from .roots import RootSystem

__all__ = [
    "Report",
    "OrthogonalSet",
    "Involution",
    "AdmissiblePair",
    "DescentClassification",
    "make_orthogonal_set",
    "orthogonal_subsets",
    "reflection_product",
    "rank_id_minus",
    "involution_length",
    "twisted_conjugate",
    "descent_classify",
    "make_admissible_pair",
    "sigma_of_pair",
    "pair_descents",
    "descent_move",
    "negated_root_report",
    "support_injectivity_check",
]


@dataclass(frozen=True)
class Report:
    """Outcome of a verification sweep: how many checks ran and which failed."""

    name: str
    checks: int
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class OrthogonalSet:
    """A canonically ordered set of pairwise orthogonal real affine roots."""

    roots: tuple[AffineRoot, ...]

    @property
    def size(self) -> int:
        return len(self.roots)

    def root_set(self) -> frozenset[AffineRoot]:
        return frozenset(self.roots)

    def to_json_dict(self) -> dict:
        return {"roots": [str(a) for a in self.roots]}

    def __str__(self) -> str:
        return "{" + ",".join(str(a) for a in self.roots) + "}"


def make_orthogonal_set(rs: RootSystem, roots: Iterable[AffineRoot]) -> OrthogonalSet:
    rset = sorted(set(roots), key=lambda a: a.sort_key)
    for i, a in enumerate(rset):
        for b in rset[i + 1 :]:
            if rs.pairing(a.finite, b.finite) != 0:
                raise ValueError(f"{a} and {b} are not orthogonal")
    return OrthogonalSet(tuple(rset))


def orthogonal_set_from_json_dict(rs: RootSystem, data: dict) -> OrthogonalSet:
    from .affine import parse_affine_root

    return make_orthogonal_set(rs, [parse_affine_root(rs, t) for t in data["roots"]])


def orthogonal_subsets(rs: RootSystem, roots: Iterable[AffineRoot]) -> list[OrthogonalSet]:
    """All pairwise orthogonal subsets, by clique backtracking, in canonical
    order (size, then lexicographic positions)."""
    pool = sorted(set(roots), key=lambda a: a.sort_key)
    ortho = [
        [rs.pairing(a.finite, b.finite) == 0 for b in pool] for a in pool
    ]
    out: list[tuple[int, ...]] = []

    def extend(start: int, chosen: list[int]) -> None:
        out.append(tuple(chosen))
        for j in range(start, len(pool)):
            if all(ortho[i][j] for i in chosen):
                chosen.append(j)
                extend(j + 1, chosen)
                chosen.pop()

    extend(0, [])
    out.sort(key=lambda idxs: (len(idxs), idxs))
    return [OrthogonalSet(tuple(pool[i] for i in idxs)) for idxs in out]


@dataclass(frozen=True)
class Involution:
    """An involutive affine Weyl element, with its orthogonal support when it
    was built as a product of commuting reflections."""

    element: AffineWeylElement
    support: Optional[OrthogonalSet] = None


def reflection_product(group: AffineWeylGroup, s: OrthogonalSet) -> Involution:
    """The product of the reflections of an orthogonal set (the order does
    not matter; the result is checked to square to the identity)."""
    el = group.identity
    for a in s.roots:
        el = group.multiply(el, group.reflection(a))
    if not group.multiply(el, el).is_identity:
        raise AssertionError("reflection product is not an involution")
    return Involution(el, s)


def rank_id_minus(group: AffineWeylGroup, x: AffineWeylElement) -> int:
    """Rank of id - x on the affine root lattice (simple roots plus delta).
    The delta direction is fixed by every element, so only the simple-root
    rows can contribute."""
    rs = group.rs
    rows = []
    for j in range(group.rank):
        g = x.images[j]
        drop = sum(
            lam * rs.pairing_with_simple_coroot(g, k + 1)
            for k, lam in enumerate(x.translation)
        )
        row = [(1 if i == j else 0) - g[i] for i in range(group.rank)]
        row.append(drop)
        rows.append(row)
    return _int_matrix_rank(rows)


def _int_matrix_rank(rows: list[list[int]]) -> int:
    m = [list(r) for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        piv = next((k for k in range(rank, len(m)) if m[k][col] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for k in range(len(m)):
            if k != rank and m[k][col] != 0:
                a, b = m[rank][col], m[k][col]
                m[k] = [x * a - y * b for x, y in zip(m[k], m[rank])]
        rank += 1
    return rank


def involution_length(group: AffineWeylGroup, inv: Involution) -> int:
    """(coxeter length + rank of id - sigma) / 2; an integer because the two
    terms have equal parity.  When the support is known its size must agree
    with the matrix rank, and that is asserted."""
    ell = group.length(inv.element)
    rk = rank_id_minus(group, inv.element)
    if inv.support is not None and rk != inv.support.size:
        raise AssertionError("rank of id - sigma differs from the support size")
    if (ell + rk) % 2:
        raise AssertionError("length and rank of id - sigma have different parity")
    return (ell + rk) // 2


def twisted_conjugate(group: AffineWeylGroup, i: int, inv: Involution) -> Involution:
    """s_i . sigma: s_i sigma when the two commute, s_i sigma s_i otherwise.
    Self-inverse on involutions."""
    s = group.simple_reflection(i)
    left = group.multiply(s, inv.element)
    if left == group.multiply(inv.element, s):
        return Involution(left)
    return Involution(group.multiply(left, s))


def descent_classify(group: AffineWeylGroup, inv: Involution, i: int) -> str:
    """'none' if sigma(alpha_i) is positive, 'real' if it equals -alpha_i,
    'complex' otherwise."""
    alpha = group.simple_affine_root(i)
    image = group.act(inv.element, alpha)
    if image.is_positive:
        return "none"
    if image == -alpha:
        return "real"
    return "complex"


@dataclass(frozen=True)
class AdmissiblePair:
    """A minuscule v together with an orthogonal S inside the inversion gap
    to a witness minuscule element above v."""

    v: MinusculeElement
    s: OrthogonalSet
    witness: MinusculeElement


def make_admissible_pair(
    group: AffineWeylGroup,
    v: MinusculeElement,
    s: OrthogonalSet,
    witness: MinusculeElement,
) -> AdmissiblePair:
    if not weak_order_leq(v, witness):
        raise ValueError("invalid pair: v is not below the witness")
    gap = witness.inversion_set() - v.inversion_set()
    if not s.root_set() <= gap:
        raise ValueError("invalid pair: S is not inside the inversion gap")
    return AdmissiblePair(v, s, witness)


def transform_set(group: AffineWeylGroup, x: AffineWeylElement, s: OrthogonalSet) -> OrthogonalSet:
    return make_orthogonal_set(group.rs, (group.act(x, a) for a in s.roots))


def sigma_of_pair(group: AffineWeylGroup, pair: AdmissiblePair) -> Involution:
    return reflection_product(group, transform_set(group, pair.v.element, pair.s))


@dataclass(frozen=True)
class DescentClassification:
    kind: str                  # none | real | complex
    locus: Optional[str] = None  # finite | affine, present iff kind != none


def pair_descents(group: AffineWeylGroup, pair: AdmissiblePair) -> dict[int, DescentClassification]:
    """Classify every simple index against the involution of the pair.

    For each descent, the pulled-back root v^{-1}(alpha) must be positive and
    lie either in the finite simple roots (finite locus) or in the negated
    inversion set of the witness (affine locus); the direct classification is
    cross-checked against the orthogonality criterion for affine descents and
    against the descent of the bare support involution for finite ones.
    """
    rs = group.rs
    sigma = sigma_of_pair(group, pair)
    sigma_s = reflection_product(group, pair.s)
    vinv = group.inverse(pair.v.element)
    witness_neg = {-a for a in pair.witness.inversions}
    out: dict[int, DescentClassification] = {}
    for i in group.simple_indices:
        kind = descent_classify(group, sigma, i)
        beta = group.act(vinv, group.simple_affine_root(i))
        if beta in witness_neg:
            not_orth = any(rs.pairing(beta.finite, g.finite) != 0 for g in pair.s.roots)
            if (kind != "none") != not_orth:
                raise AssertionError("affine descent criterion mismatch")
            if (kind == "real") != (-beta in pair.s.root_set()):
                raise AssertionError("real affine descent criterion mismatch")
        if kind == "none":
            out[i] = DescentClassification("none")
            continue
        if not beta.is_positive:
            raise AssertionError("descent pulled back to a negative root")
        if beta.level == 0 and beta.finite.height == 1:
            if descent_classify(group, sigma_s, _finite_index(group, beta)) == "none":
                raise AssertionError("finite descent does not descend the support involution")
            real_for_support = (
                group.act(sigma_s.element, beta) == -beta
            )
            if real_for_support != (kind == "real"):
                raise AssertionError("real finite descent criterion mismatch")
            out[i] = DescentClassification(kind, "finite")
        elif beta in witness_neg:
            out[i] = DescentClassification(kind, "affine")
        else:
            raise AssertionError("descent is neither finite nor affine")
    return out


def _finite_index(group: AffineWeylGroup, beta: AffineRoot) -> int:
    return next(
        i for i in range(1, group.rank + 1) if group.rs.simple_root(i) == beta.finite
    )


def descent_move(group: AffineWeylGroup, pair: AdmissiblePair, i: int) -> AdmissiblePair:
    """Lower an admissible pair along a descent: the four cases are keyed by
    the real/complex and finite/affine classification of the descent.  The
    result is admissible for the same witness and its involution is the
    twisted conjugate of the input's; both facts are asserted."""
    from .minuscule import minuscule_from_element

    cls = pair_descents(group, pair)[i]
    if cls.kind == "none":
        raise ValueError(f"index {i} is not a descent for the pair")
    rs = group.rs
    beta = group.act(group.inverse(pair.v.element), group.simple_affine_root(i))
    if cls.locus == "affine":
        new_v = minuscule_from_element(
            group, group.multiply(group.simple_reflection(i), pair.v.element)
        )
        if cls.kind == "complex":
            new_s = pair.s
        else:
            new_s = make_orthogonal_set(rs, pair.s.root_set() - {-beta})
        result = make_admissible_pair(group, new_v, new_s, pair.witness)
    else:
        if cls.kind == "complex":
            reflected = [
                AffineRoot(rs.reflect(beta.finite, a.finite), a.level)
                for a in pair.s.roots
            ]
            new_s = make_orthogonal_set(rs, reflected)
        else:
            new_s = _real_finite_replacement(rs, pair.s, beta)
        result = make_admissible_pair(group, pair.v, new_s, pair.witness)
    expected = twisted_conjugate(group, i, sigma_of_pair(group, pair))
    if sigma_of_pair(group, result).element != expected.element:
        raise AssertionError("descent move does not match twisted conjugation")
    return result


def _real_finite_replacement(rs: RootSystem, s: OrthogonalSet, beta: AffineRoot) -> OrthogonalSet:
    """S with the pair gamma1 = gamma2 + 2 beta replaced by beta + gamma2.
    All decompositions must give the same replacement; anything else is
    surfaced rather than silently picked."""
    candidates = []
    for g1 in s.roots:
        for g2 in s.roots:
            if g1 == g2:
                continue
            diff = g1.finite - g2.finite
            if g1.level == g2.level and diff.coeffs == tuple(
                2 * c for c in beta.finite.coeffs
            ):
                candidates.append((g1, g2))
    if not candidates:
        raise AssertionError("real finite descent without a half-difference pair")
    results = set()
    for g1, g2 in candidates:
        repl = AffineRoot(beta.finite + g2.finite, g2.level)
        kept = s.root_set() - {g1, g2} | {repl}
        results.add(frozenset(kept))
    if len(results) != 1:
        raise AssertionError("ambiguous real finite descent replacement")
    g1, g2 = candidates[0]
    return make_orthogonal_set(
        rs, s.root_set() - {g1, g2} | {AffineRoot(beta.finite + g2.finite, g2.level)}
    )


def negated_root_report(
    group: AffineWeylGroup,
    s: OrthogonalSet,
    inside: Optional[MinusculeElement] = None,
) -> Report:
    """Enumerate the real roots sent to their negatives by the involution of
    S and verify each is half of (+-b) + (+-b') with b, b' in S; roots at
    level -1 with positive finite part must use the plus-plus form, finite
    roots the mixed form.

    The level window |level| <= 1 + sum of |support levels| is provably
    sufficient: a negated root lies in the rational span of S and its
    support coefficients are at most one in absolute value.
    """
    rs = group.rs
    if inside is not None and not s.root_set() <= inside.inversion_set():
        raise ValueError("S is not inside the inversion set of the given element")
    sigma = reflection_product(group, s)
    window = 1 + sum(abs(a.level) for a in s.roots)
    halves = {}
    for b in s.roots:
        for bp in s.roots:
            for sb in (1, -1):
                for sbp in (1, -1):
                    fin = tuple(
                        sb * x + sbp * y
                        for x, y in zip(b.finite.coeffs, bp.finite.coeffs)
                    )
                    lev = sb * b.level + sbp * bp.level
                    halves.setdefault((fin, lev), (sb, sbp))
    checks = 0
    violations = []
    for gamma in rs.roots:
        for n in range(-window, window + 1):
            a = AffineRoot(gamma, n)
            if group.act(sigma.element, a) != -a:
                continue
            checks += 1
            key = (tuple(2 * c for c in gamma.coeffs), 2 * n)
            if key not in halves:
                violations.append(f"{a} is negated but is not a half sum of support roots")
                continue
            if n == -1 and gamma.is_positive and key not in _plus_plus(s):
                violations.append(f"{a} is negated but not a plus-plus half sum")
            if n == 0 and key not in _plus_minus(s):
                violations.append(f"{a} is negated but not a plus-minus half sum")
    return Report("negated-roots-halfsum", checks, tuple(violations))


def _plus_plus(s: OrthogonalSet) -> set:
    return {
        (
            tuple(x + y for x, y in zip(b.finite.coeffs, bp.finite.coeffs)),
            b.level + bp.level,
        )
        for b in s.roots
        for bp in s.roots
    }


def _plus_minus(s: OrthogonalSet) -> set:
    out = set()
    for b in s.roots:
        for bp in s.roots:
            out.add(
                (
                    tuple(x - y for x, y in zip(b.finite.coeffs, bp.finite.coeffs)),
                    b.level - bp.level,
                )
            )
    return out


@lru_cache(maxsize=None)
def _shifted_positive_orthogonal_index(group: AffineWeylGroup):
    """All orthogonal subsets of Phi^+ - delta, bucketed by their involution."""
    psi = [AffineRoot(g, -1) for g in group.rs.positive_roots]
    buckets: dict[AffineWeylElement, list[OrthogonalSet]] = {}
    for sub in orthogonal_subsets(group.rs, psi):
        el = reflection_product(group, sub).element
        buckets.setdefault(el, []).append(sub)
    return buckets


def support_injectivity_check(group: AffineWeylGroup, m: MinusculeElement) -> bool:
    """Within the inversion set of a minuscule element, the involution
    determines the orthogonal subset: no other orthogonal subset of
    Phi^+ - delta shares its involution."""
    buckets = _shifted_positive_orthogonal_index(group)
    for sub in orthogonal_subsets(group.rs, m.inversions):
        el = reflection_product(group, sub).element
        mates = buckets.get(el, [])
        if len(mates) != 1 or mates[0].root_set() != sub.root_set():
            return False
    return True
