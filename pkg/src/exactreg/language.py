"""Legal words, factor sets, collared alphabets and anchored occurrence counts."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .exactalg import Matrix
from .exactalg.matrix import is_primitive_matrix
from .substitution import Substitution, SubstitutionError, Word, substitution_matrix

DEFAULT_LENGTH_GUARD = 10**8


class LengthGuardError(SubstitutionError):
    pass


class CollarError(ValueError):
    pass


def iterate(s: Substitution, letter: int, n: int, guard: int = DEFAULT_LENGTH_GUARD) -> Word:
    """phi^n(letter)."""
    return iterate_word(s, (letter,), n, guard)


def iterate_word(s: Substitution, word: Sequence[int], n: int,
                 guard: int = DEFAULT_LENGTH_GUARD) -> Word:
    if n < 0:
        raise ValueError("n must be nonnegative")
    lengths = supertile_lengths(s, n)
    if sum(lengths[x] for x in word) > guard:
        raise LengthGuardError(f"phi^{n} of a {len(word)}-letter word exceeds {guard} letters")
    w = tuple(word)
    for _ in range(n):
        w = s.apply(w)
    return w


def supertile_lengths(s: Substitution, n: int) -> list[int]:
    """Letter counts |phi^n(l)| for every letter, without building words."""
    lens = [1] * s.size
    for _ in range(n):
        lens = [sum(lens[x] for x in img) for img in s.images]
    return lens


def min_order_for_length(s: Substitution, length: int) -> int:
    """Smallest n with min_l |phi^n(l)| >= length."""
    n, lens = 0, [1] * s.size
    while min(lens) < length:
        lens = [sum(lens[x] for x in img) for img in s.images]
        n += 1
        if n > 10_000:
            raise SubstitutionError("supertiles do not grow; substitution is not primitive")
    return n


class _PowerCache:
    """phi^k of single letters, built on demand."""

    def __init__(self, s: Substitution, guard: int = DEFAULT_LENGTH_GUARD):
        self.s = s
        self.guard = guard
        self.levels: list[list[Word]] = [[(i,) for i in range(s.size)]]

    def get(self, letter: int, k: int) -> Word:
        while len(self.levels) <= k:
            prev = self.levels[-1]
            nxt = [tuple(x for y in img for x in prev[y]) for img in self.s.images]
            if max(len(w) for w in nxt) > self.guard:
                raise LengthGuardError(f"supertiles exceed {self.guard} letters")
            self.levels.append(nxt)
        return self.levels[k][letter]

    def word(self, word: Sequence[int], k: int) -> Word:
        return tuple(x for y in word for x in self.get(y, k))


def two_block_closure(s: Substitution) -> frozenset[Word]:
    """Legal 2-letter factors: seeds inside images, closed under boundary pairs."""
    seen: set[Word] = set()
    for img in s.images:
        for i in range(len(img) - 1):
            seen.add((img[i], img[i + 1]))
    frontier = list(seen)
    while frontier:
        x, y = frontier.pop()
        for pair in _pairs_of(s.images[x] + s.images[y]):
            if pair not in seen:
                seen.add(pair)
                frontier.append(pair)
    return frozenset(seen)


def _pairs_of(w: Word) -> Iterable[Word]:
    return ((w[i], w[i + 1]) for i in range(len(w) - 1))


def factors(s: Substitution, m: int) -> frozenset[Word]:
    """All legal factors of length m.

    Every legal m-word sits inside phi^k(xy) for a legal pair xy once the
    shortest supertile has at least m-1 letters.
    """
    if m < 1:
        raise ValueError("factor length must be >= 1")
    if m == 1:
        return frozenset((i,) for i in range(s.size))
    pairs = two_block_closure(s)
    k = min_order_for_length(s, m - 1)
    cache = _PowerCache(s)
    out: set[Word] = set()
    for x, y in pairs:
        w = cache.get(x, k) + cache.get(y, k)
        for i in range(len(w) - m + 1):
            out.add(w[i:i + m])
    return frozenset(out)


def factor_complexity(s: Substitution, nmax: int) -> list[int]:
    """[p(1), ..., p(nmax + 1)]; shorter factors are prefixes of longer ones."""
    top = factors(s, nmax + 1)
    return [len({w[:n] for w in top}) for n in range(1, nmax + 2)]


def is_legal(s: Substitution, word: Sequence[int]) -> bool:
    return tuple(word) in factors(s, len(word))


def count_occurrences(patch: Sequence[int], w: Sequence[int]) -> int:
    """Occurrences of patch lying entirely inside w."""
    p, w = tuple(patch), tuple(w)
    if not p:
        raise ValueError("empty patch")
    n = len(p)
    return sum(1 for i in range(len(w) - n + 1) if w[i:i + n] == p)


def count_anchored(patch: Sequence[int], w: Sequence[int], right_context: Sequence[int]) -> int:
    """Occurrences whose first letter lies in w, allowed to run into right_context."""
    p = tuple(patch)
    if not p:
        raise ValueError("empty patch")
    if len(right_context) < len(p) - 1:
        raise ValueError("right context shorter than |P| - 1")
    full = tuple(w) + tuple(right_context[:len(p) - 1])
    n = len(p)
    return sum(1 for i in range(len(w)) if full[i:i + n] == p)


class CollaredLetter(NamedTuple):
    left: Word
    center: int
    right: Word

    @property
    def window(self) -> Word:
        return self.left + (self.center,) + self.right


@dataclass(frozen=True)
class BlockSystem:
    """Radius-m collared alphabet with its induced substitution."""

    substitution: Substitution
    radius: int
    letters: tuple[CollaredLetter, ...]
    rules: tuple[tuple[int, ...], ...]
    matrix: Matrix
    degenerate: bool
    index: dict = field(compare=False, repr=False)

    @property
    def size(self) -> int:
        return len(self.letters)

    def centers(self) -> list[int]:
        return [c.center for c in self.letters]

    def lookup(self, window: Sequence[int]) -> int:
        try:
            return self.index[tuple(window)]
        except KeyError:
            raise CollarError(f"window {tuple(window)} is not a legal collared letter") from None


def collar(s: Substitution, m: int = 1) -> BlockSystem:
    """Collared alphabet of radius m and the induced substitution on it."""
    if m < 1:
        raise ValueError("collar radius must be >= 1")
    windows = sorted(factors(s, 2 * m + 1))
    letters = tuple(CollaredLetter(w[:m], w[m], w[m + 1:]) for w in windows)
    index = {w: i for i, w in enumerate(windows)}
    rules = []
    for c in letters:
        big = s.apply(c.left)
        start = len(big)
        mid = s.images[c.center]
        big = big + mid + s.apply(c.right)
        # every letter has a nonempty image, so phi of an m-word has >= m letters
        image = []
        for pos in range(start, start + len(mid)):
            win = big[pos - m:pos + m + 1]
            if win not in index:
                raise CollarError(f"induced window {win} is not legal")
            image.append(index[win])
        rules.append(tuple(image))
    n = len(letters)
    mat = [[0] * n for _ in range(n)]
    for j, img in enumerate(rules):
        for i in img:
            mat[i][j] += 1
    # Morse-Hedlund: p(2m+1) <= 2m+1 means an eventually periodic language
    degenerate = n <= 2 * m + 1
    return BlockSystem(s, m, letters, tuple(rules), Matrix(mat), degenerate, index)


@dataclass(frozen=True)
class BorderVerdict:
    forces: bool
    depth: int | None


def forces_border(s: Substitution, max_n: int = 8) -> BorderVerdict:
    """Smallest n at which phi^n of every letter has a determined 1-letter collar."""
    triples = factors(s, 3)
    last = list(range(s.size))
    first = list(range(s.size))
    for n in range(max_n + 1):
        ok = True
        for x in range(s.size):
            ctx = [(l, r) for (l, c, r) in triples if c == x]
            if len({last[l] for l, _ in ctx}) > 1 or len({first[r] for _, r in ctx}) > 1:
                ok = False
                break
        if ok:
            return BorderVerdict(True, n)
        last = [last[img[-1]] for img in s.images]
        first = [first[img[0]] for img in s.images]
    return BorderVerdict(False, None)


@dataclass(frozen=True)
class AnchoredCountVector:
    patch: Word
    order: int
    values: tuple[int, ...]


def collar_suffices(bs: BlockSystem, patch_len: int, n: int) -> bool:
    """Whether the substituted right collar covers |P| - 1 letters at order n."""
    return bs.radius * min(supertile_lengths(bs.substitution, n)) >= patch_len - 1


def min_anchor_order(bs: BlockSystem, patch_len: int) -> int:
    """Least n at which the radius-m right collar, substituted n times, covers |P| - 1 letters."""
    n = 0
    while not collar_suffices(bs, patch_len, n):
        n += 1
        if n > 10_000:
            raise CollarError("supertiles do not grow")
    return n


def anchored_count_vector(patch: Sequence[int], bs: BlockSystem, n: int) -> AnchoredCountVector:
    """Per collared letter c, occurrences of P anchored in phi^n(center(c)).

    Right context is phi^n of the right collar.  Values are computed by
    direct counting at the least admissible order and pushed to order n
    with the induced substitution.
    """
    p = tuple(patch)
    if not p:
        raise ValueError("empty patch")
    if not collar_suffices(bs, len(p), n):
        raise CollarError(
            f"collar radius {bs.radius} too small for a patch of length {len(p)} at order {n}")
    n0 = min_anchor_order(bs, len(p))
    cache = _PowerCache(bs.substitution)
    values = []
    for c in bs.letters:
        body = cache.get(c.center, n0)
        ctx = cache.word(c.right, n0)
        values.append(count_anchored(p, body, ctx))
    for _ in range(n - n0):
        values = [sum(values[i] for i in rule) for rule in bs.rules]
    return AnchoredCountVector(p, n, tuple(values))


def brute_anchored_count_vector(patch: Sequence[int], bs: BlockSystem, n: int) -> tuple[int, ...]:
    """Same quantity by substituting each window explicitly (reference implementation)."""
    s = bs.substitution
    out = []
    for c in bs.letters:
        body = iterate(s, c.center, n)
        ctx = iterate_word(s, c.right, n)
        out.append(count_anchored(patch, body, ctx))
    return tuple(out)


def is_collared_primitive(bs: BlockSystem) -> bool:
    return is_primitive_matrix(bs.matrix)[0]


def check_matrix_homomorphism(s: Substitution, k: int) -> bool:
    return substitution_matrix(s.power(k)) == substitution_matrix(s) ** k
