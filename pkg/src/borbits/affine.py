"""The affine Weyl group acting on real affine roots, with exact arithmetic.

A real affine root ``gamma + n*delta`` is a finite root plus an integer
level.  An affine Weyl group element is stored in the canonical form
``x = t_lambda * w`` with ``w`` a finite Weyl element (kept as the images of
the simple roots, an integer matrix on root coordinates) and ``lambda`` an
integer vector over the simple coroots.  The action is

    x(gamma + n*delta) = w(gamma) + (n - <w(gamma), lambda>) * delta,

so equality of elements is equality of the pair, and words are derived
views.  Lengths come from greedy descent stripping, Bruhat comparisons from
the standard lifting recursion, and both have independent brute-force
counterparts (bounded inversion counting, subword search) used as oracles
by the test suite.  The alcove containment test runs on exact rational
vertex coordinates; there are no tolerances anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import re

from .roots import Root, RootSystem

__all__ = [
    "AffineRoot",
    "AffineWeylElement",
    "AffineWeylGroup",
    "ReducedWord",
    "word_to_text",
    "text_to_word",
]

# a (reduced) word is a sequence of simple reflection indices, 0 = s_{delta-theta}
ReducedWord = tuple[int, ...]


def word_to_text(word: ReducedWord) -> str:
    return " ".join(str(i) for i in word)


def text_to_word(text: str) -> ReducedWord:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(p) for p in text.split())


@dataclass(frozen=True)
class AffineRoot:
    """A real affine root ``finite + level * delta``."""

    finite: Root
    level: int

    def __post_init__(self) -> None:
        if not any(self.finite.coeffs):
            raise ValueError("affine roots must have a nonzero finite part")

    @property
    def is_positive(self) -> bool:
        if self.level != 0:
            return self.level > 0
        return self.finite.is_positive

    @property
    def sort_key(self) -> tuple:
        return (self.level, self.finite.sort_key)

    def __neg__(self) -> "AffineRoot":
        return AffineRoot(-self.finite, -self.level)

    def __str__(self) -> str:
        if self.level == 0:
            return str(self.finite)
        sign = "+" if self.level > 0 else "-"
        return f"{self.finite}{sign}{abs(self.level)}d"


_AFFINE_RE = re.compile(r"^(?P<finite>[0-9,\-]+?)(?:(?P<sign>[+-])(?P<mult>\d*)d)?$")


def parse_affine_root(rs: RootSystem, text: str) -> AffineRoot:
    """Parse the grammar ``coeffs(+-kd)``, e.g. ``1,1-1d``."""
    m = _AFFINE_RE.match(text.strip().replace(" ", ""))
    if not m:
        raise ValueError(f"bad affine root {text!r}")
    finite = rs.parse_root(m.group("finite"))
    level = 0
    if m.group("sign"):
        mult = int(m.group("mult")) if m.group("mult") else 1
        level = mult if m.group("sign") == "+" else -mult
    return AffineRoot(finite, level)


@dataclass(frozen=True)
class AffineWeylElement:
    """``t_lambda * w``: images of the simple roots under ``w`` (rows of an
    integer matrix on root coordinates) plus the translation ``lambda`` in
    simple-coroot coordinates."""

    images: tuple[tuple[int, ...], ...]
    translation: tuple[int, ...]

    @property
    def is_identity(self) -> bool:
        rank = len(self.images)
        return self.translation == (0,) * rank and self.images == tuple(
            tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)
        )

    def to_json_dict(self) -> dict:
        return {
            "w": [list(row) for row in self.images],
            "lambda": list(self.translation),
        }

    @staticmethod
    def from_json_dict(data: dict) -> "AffineWeylElement":
        return AffineWeylElement(
            tuple(tuple(int(x) for x in row) for row in data["w"]),
            tuple(int(x) for x in data["lambda"]),
        )


def _apply_images(images: tuple[tuple[int, ...], ...], coeffs: tuple[int, ...]) -> tuple[int, ...]:
    rank = len(images)
    out = [0] * rank
    for i, c in enumerate(coeffs):
        if c:
            row = images[i]
            for j in range(rank):
                out[j] += c * row[j]
    return tuple(out)


class AffineWeylGroup:
    """Operations of the affine Weyl group of a finite root system.

    The group object owns the per-system caches (lengths, inverses, Bruhat
    comparisons, reflections); elements themselves are immutable values.
    """

    def __init__(self, rs: RootSystem):
        self.rs = rs
        self.rank = rs.rank
        zero = (0,) * self.rank
        self.identity = AffineWeylElement(
            tuple(tuple(1 if j == i else 0 for j in range(self.rank)) for i in range(self.rank)),
            zero,
        )
        self._reflections: dict[AffineRoot, AffineWeylElement] = {}
        self._simple: list[AffineWeylElement] = []
        theta = rs.highest_root
        for i in range(self.rank + 1):
            if i == 0:
                self._simple.append(self.reflection(AffineRoot(-theta, 1)))
            else:
                alpha = rs.simple_root(i)
                images = tuple(
                    rs.reflect(alpha, rs.simple_root(j)).coeffs
                    for j in range(1, self.rank + 1)
                )
                self._simple.append(AffineWeylElement(images, zero))
        self._length: dict[AffineWeylElement, int] = {self.identity: 0}
        self._inverse: dict[AffineWeylElement, AffineWeylElement] = {}
        self._bruhat: dict[tuple[AffineWeylElement, AffineWeylElement], bool] = {}
        self._alcove_vertices = self._fundamental_alcove_vertices()

    # -- basic elements ----------------------------------------------------

    def simple_affine_root(self, i: int) -> AffineRoot:
        if i == 0:
            return AffineRoot(-self.rs.highest_root, 1)
        return AffineRoot(self.rs.simple_root(i), 0)

    @property
    def simple_indices(self) -> range:
        return range(self.rank + 1)

    def simple_reflection(self, i: int) -> AffineWeylElement:
        if not 0 <= i <= self.rank:
            raise ValueError(f"simple reflection index {i} out of range")
        return self._simple[i]

    def reflection(self, a: AffineRoot) -> AffineWeylElement:
        """The reflection s_a, as t_{-n * gamma^vee} s_gamma for a = gamma + n*delta."""
        cached = self._reflections.get(a)
        if cached is not None:
            return cached
        rs = self.rs
        gamma = rs.root(a.finite.coeffs)
        images = tuple(
            rs.reflect(gamma, rs.simple_root(j)).coeffs for j in range(1, self.rank + 1)
        )
        lam = tuple(-a.level * c for c in rs.coroot_coords(gamma))
        out = AffineWeylElement(images, lam)
        self._reflections[a] = out
        return out

    def is_simple_affine(self, a: AffineRoot) -> bool:
        if a.level == 0:
            return a.finite.height == 1 and a.finite.is_positive
        return a.level == 1 and a.finite == -self.rs.highest_root

    # -- group operations ----------------------------------------------------

    def act(self, x: AffineWeylElement, a: AffineRoot) -> AffineRoot:
        g = _apply_images(x.images, a.finite.coeffs)
        drop = sum(
            lam * self.rs.pairing_with_simple_coroot(g, k + 1)
            for k, lam in enumerate(x.translation)
            if lam
        )
        return AffineRoot(self.rs.root(g), a.level - drop)

    def _finite_on_coroot(self, images: tuple[tuple[int, ...], ...], mu) -> tuple:
        out = [0] * self.rank
        for k, m in enumerate(mu):
            if m:
                img = self.rs.coroot_coords(Root(images[k]))
                for j in range(self.rank):
                    out[j] += m * img[j]
        return tuple(out)

    def multiply(self, x: AffineWeylElement, y: AffineWeylElement) -> AffineWeylElement:
        images = tuple(_apply_images(x.images, row) for row in y.images)
        shifted = self._finite_on_coroot(x.images, y.translation)
        lam = tuple(a + b for a, b in zip(x.translation, shifted))
        return AffineWeylElement(images, lam)

    def inverse(self, x: AffineWeylElement) -> AffineWeylElement:
        cached = self._inverse.get(x)
        if cached is not None:
            return cached
        inv_images = _invert_unimodular(x.images)
        lam = tuple(-c for c in self._finite_on_coroot(inv_images, x.translation))
        out = AffineWeylElement(inv_images, lam)
        self._inverse[x] = out
        self._inverse[out] = x
        return out

    def evaluate_word(self, word: ReducedWord) -> AffineWeylElement:
        out = self.identity
        for i in word:
            out = self.multiply(out, self.simple_reflection(i))
        return out

    # -- lengths, descents, words -------------------------------------------

    def descents(self, x: AffineWeylElement, side: str = "right") -> frozenset[int]:
        """Simple indices i with x(alpha_i) negative (right) or
        x^{-1}(alpha_i) negative (left)."""
        if side == "left":
            x = self.inverse(x)
        elif side != "right":
            raise ValueError("side must be 'left' or 'right'")
        return frozenset(
            i for i in self.simple_indices
            if not self.act(x, self.simple_affine_root(i)).is_positive
        )

    def length(self, x: AffineWeylElement) -> int:
        cached = self._length.get(x)
        if cached is not None:
            return cached
        n = len(self.reduced_word(x))
        return n

    def reduced_word(self, x: AffineWeylElement) -> ReducedWord:
        """Greedy left-descent stripping, always taking the smallest index;
        the letters evaluate left to right back to x."""
        letters: list[int] = []
        cur = x
        inv = self.inverse(x)
        suffixes = [cur]
        while True:
            i = next(
                (
                    i
                    for i in self.simple_indices
                    if not self.act(inv, self.simple_affine_root(i)).is_positive
                ),
                None,
            )
            if i is None:
                break
            s = self.simple_reflection(i)
            letters.append(i)
            cur = self.multiply(s, cur)
            inv = self.multiply(inv, s)
            suffixes.append(cur)
        if not cur.is_identity:
            raise AssertionError("descent stripping did not reach the identity")
        for k, elt in enumerate(suffixes):
            self._length.setdefault(elt, len(letters) - k)
        return tuple(letters)

    def count_inversions(self, x: AffineWeylElement) -> int:
        """|{a > 0 : x(a) < 0}| by brute force over the provably sufficient
        level window max|<gamma, lambda>| + 1 (negating identifies this set
        with {a < 0 : x(a) > 0})."""
        return len(self.inversions_from_negative(x))

    def inversions_from_negative(self, x: AffineWeylElement) -> list[AffineRoot]:
        """{a < 0 : x(a) > 0}; finite, contained in levels -(M+1)..0 where
        M = max|<gamma, lambda>| over gamma in Phi."""
        bound = self._level_bound(x)
        out = []
        for gamma in self.rs.roots:
            for n in range(-bound, 1):
                if n == 0 and gamma.is_positive:
                    continue
                a = AffineRoot(gamma, n)
                if self.act(x, a).is_positive:
                    out.append(a)
        return out

    def _level_bound(self, x: AffineWeylElement) -> int:
        m = 0
        for gamma in self.rs.positive_roots:
            d = abs(
                sum(
                    lam * self.rs.pairing_with_simple_coroot(gamma.coeffs, k + 1)
                    for k, lam in enumerate(x.translation)
                )
            )
            m = max(m, d)
        return m + 1

    # -- Bruhat order ---------------------------------------------------------

    def bruhat_leq(self, u: AffineWeylElement, w: AffineWeylElement) -> bool:
        """Lifting recursion: for a left descent i of w,
        u <= w iff min(u, s_i u) <= s_i w."""
        if u.is_identity:
            return True
        key = (u, w)
        cached = self._bruhat.get(key)
        if cached is not None:
            return cached
        stack = [key]
        while stack:
            u0, w0 = top = stack[-1]
            if top in self._bruhat:
                stack.pop()
                continue
            if u0.is_identity:
                self._bruhat[top] = True
                stack.pop()
                continue
            lu, lw = self.length(u0), self.length(w0)
            if lu > lw:
                self._bruhat[top] = False
                stack.pop()
                continue
            if lu == lw:
                self._bruhat[top] = u0 == w0
                stack.pop()
                continue
            winv = self.inverse(w0)
            i = next(
                i
                for i in self.simple_indices
                if not self.act(winv, self.simple_affine_root(i)).is_positive
            )
            s = self.simple_reflection(i)
            su = self.multiply(s, u0)
            u1 = su if self.length(su) < lu else u0
            sub = (u1, self.multiply(s, w0))
            if sub in self._bruhat:
                self._bruhat[top] = self._bruhat[sub]
                stack.pop()
            else:
                stack.append(sub)
        return self._bruhat[key]

    def bruhat_lower_interval_oracle(self, w: AffineWeylElement) -> frozenset[AffineWeylElement]:
        """Everything below w for the Bruhat order, by brute force over the
        subwords of one fixed reduced word of w.  Guarded to length <= 20."""
        word = self.reduced_word(w)
        if len(word) > 20:
            raise ValueError("the subword oracle is capped at length 20")
        reachable = {self.identity}
        for i in word:
            s = self.simple_reflection(i)
            reachable |= {self.multiply(x, s) for x in reachable}
        return frozenset(reachable)

    def bruhat_leq_oracle(self, u: AffineWeylElement, w: AffineWeylElement) -> bool:
        """Subword-property brute force: u <= w iff some subword of one fixed
        reduced word of w evaluates to u."""
        return u in self.bruhat_lower_interval_oracle(w)

    # -- alcove geometry --------------------------------------------------------

    def _fundamental_alcove_vertices(self) -> list[tuple[Fraction, ...]]:
        rank = self.rank
        cart = [[Fraction(self.rs.cartan[i][j]) for j in range(rank)] for i in range(rank)]
        inv = _invert_rational(cart)
        vertices = [tuple(Fraction(0) for _ in range(rank))]
        for i in range(rank):
            m = self.rs.marks[i]
            vertices.append(tuple(inv[i][j] / m for j in range(rank)))
        return vertices

    def _pair_root_with_point(self, coeffs: tuple[int, ...], point: tuple[Fraction, ...]) -> Fraction:
        return sum(
            (point[k] * self.rs.pairing_with_simple_coroot(coeffs, k + 1) for k in range(self.rank)),
            Fraction(0),
        )

    def act_on_point(self, x: AffineWeylElement, point: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        """Affine action on the coroot space, x . v = w(v) + lambda."""
        out = [Fraction(c) for c in x.translation]
        for k, v in enumerate(point):
            if v:
                img = self.rs.coroot_coords(Root(x.images[k]))
                for j in range(self.rank):
                    out[j] += v * img[j]
        return tuple(out)

    def alcove_image_check(self, x: AffineWeylElement) -> bool:
        """True iff x^{-1} maps the closed fundamental alcove into the closed
        doubled alcove.  Checking the vertices suffices because affine maps
        send the simplex onto the convex hull of the image vertices."""
        xinv = self.inverse(x)
        theta = self.rs.highest_root.coeffs
        for p in self._alcove_vertices:
            q = self.act_on_point(xinv, p)
            for i in range(1, self.rank + 1):
                if self._pair_root_with_point(self.rs.simple_root(i).coeffs, q) < 0:
                    return False
            if self._pair_root_with_point(theta, q) > 2:
                return False
        return True


def _invert_unimodular(rows: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    n = len(rows)
    aug = [[Fraction(rows[i][j]) for j in range(n)] + [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    inv = _gauss_jordan(aug, n)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = inv[i][j]
            if x.denominator != 1:
                raise AssertionError("matrix is not unimodular")
            row.append(int(x))
        out.append(tuple(row))
    return tuple(out)


def _invert_rational(rows: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(rows)
    aug = [list(rows[i]) + [Fraction(1 if j == i else 0) for j in range(n)] for i in range(n)]
    return _gauss_jordan(aug, n)


def _gauss_jordan(aug: list[list[Fraction]], n: int) -> list[list[Fraction]]:
    for col in range(n):
        piv = next(k for k in range(col, n) if aug[k][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        d = aug[col][col]
        aug[col] = [x / d for x in aug[col]]
        for k in range(n):
            if k != col and aug[k][col] != 0:
                f = aug[k][col]
                aug[k] = [x - f * y for x, y in zip(aug[k], aug[col])]
    return [row[n:] for row in aug]
