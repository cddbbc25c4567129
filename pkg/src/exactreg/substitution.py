"""Substitution rules, their matrices and Perron-Frobenius data."""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Mapping, Sequence

from .exactalg import (
    AlgebraicNumber,
    IntPoly,
    Matrix,
    NumberField,
    charpoly,
    factor_squarefree_then_irreducible,
    is_primitive_matrix,
    isolate_real_roots,
    parse_poly,
)
from .exactalg.matrix import field_nullspace
from .exactalg.roots import bisect_once
from .exactalg.spectral import dominant_root_is_strict, second_modulus_interval

Word = tuple[int, ...]


class SubstitutionError(ValueError):
    """Invalid substitution data."""


class SubstitutionSyntaxError(SubstitutionError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col
        self.reason = message


class NotPrimitiveError(SubstitutionError):
    pass


@dataclass(frozen=True)
class Substitution:
    """Letter-to-word rule on a finite alphabet of named letters.

    ``images[j]`` is the image of ``alphabet[j]`` as a tuple of letter
    indices.  ``length_override`` optionally holds user tile lengths as
    integer polynomials in the stretching factor.
    """

    alphabet: tuple[str, ...]
    images: tuple[Word, ...]
    length_override: tuple[IntPoly, ...] | None = None

    def __post_init__(self):
        if not self.alphabet:
            raise SubstitutionError("alphabet is empty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise SubstitutionError("alphabet has duplicate letters")
        if len(self.images) != len(self.alphabet):
            raise SubstitutionError("one image per letter required")
        n = len(self.alphabet)
        for name, img in zip(self.alphabet, self.images):
            if not img:
                raise SubstitutionError(f"empty image for letter {name!r}")
            if any(not 0 <= x < n for x in img):
                raise SubstitutionError(f"image of {name!r} uses an unknown letter")
        if self.length_override is not None and len(self.length_override) != n:
            raise SubstitutionError("lengths header must give one length per letter")

    @classmethod
    def from_rules(cls, rules: Mapping[str, Sequence[str] | str]) -> "Substitution":
        """Build from ``{"a": "ab", "b": "ba"}`` (strings split into characters)."""
        alphabet = tuple(rules)
        index = {a: i for i, a in enumerate(alphabet)}
        images = []
        for a in alphabet:
            img = rules[a]
            letters = list(img) if isinstance(img, str) else list(img)
            try:
                images.append(tuple(index[x] for x in letters))
            except KeyError as exc:
                raise SubstitutionError(f"unknown letter {exc.args[0]!r} in image of {a!r}") from None
        return cls(alphabet, tuple(images))

    @property
    def size(self) -> int:
        return len(self.alphabet)

    def index(self, letter: str) -> int:
        try:
            return self.alphabet.index(letter)
        except ValueError:
            raise SubstitutionError(f"unknown letter {letter!r}") from None

    def apply(self, word: Sequence[int]) -> Word:
        out: list[int] = []
        for x in word:
            out.extend(self.images[x])
        return tuple(out)

    def power(self, k: int) -> "Substitution":
        """The k-fold composite substitution."""
        if k < 1:
            raise ValueError("power must be >= 1")
        images = [(i,) for i in range(self.size)]
        for _ in range(k):
            images = [self.apply(w) for w in images]
        return Substitution(self.alphabet, tuple(images))

    def word(self, text: str) -> Word:
        """Parse a patch: whitespace-separated letters, or a run of one-character letters."""
        text = text.strip()
        if not text:
            raise SubstitutionError("empty word")
        tokens = text.split()
        if len(tokens) == 1 and tokens[0] not in self.alphabet:
            tokens = _greedy_split(tokens[0], self.alphabet)
        return tuple(self.index(t) for t in tokens)

    def format_word(self, word: Sequence[int]) -> str:
        names = [self.alphabet[i] for i in word]
        if all(len(a) == 1 for a in self.alphabet):
            return "".join(names)
        return " ".join(names)

    def to_text(self) -> str:
        lines = []
        if self.length_override is not None:
            lines.append("lengths: " + " ".join(p.format("L").replace(" ", "") for p in self.length_override))
        for a, img in zip(self.alphabet, self.images):
            lines.append(f"{a} -> " + " ".join(self.alphabet[i] for i in img))
        return "\n".join(lines) + "\n"


def _greedy_split(text: str, alphabet: Sequence[str]) -> list[str]:
    names = sorted(alphabet, key=len, reverse=True)
    out, pos = [], 0
    while pos < len(text):
        for a in names:
            if text.startswith(a, pos):
                out.append(a)
                pos += len(a)
                break
        else:
            raise SubstitutionError(f"cannot split {text!r} into letters at offset {pos}")
    return out


_LETTER = re.compile(r"[^\s#]+")


def parse_substitution(text: str) -> Substitution:
    """Parse the rule DSL.

    One rule per line, ``letter -> letter letter ...``; ``#`` starts a
    comment; an optional ``lengths: p1 p2 ...`` header gives tile lengths
    as integer polynomials in ``L``.
    """
    rules: list[tuple[str, list[tuple[str, int]], int, int]] = []
    seen: dict[str, int] = {}
    lengths_spec: tuple[list[tuple[str, int]], int] | None = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        stripped = line.lstrip()
        indent = len(line) - len(stripped)
        if stripped.startswith("lengths:"):
            if lengths_spec is not None:
                raise SubstitutionSyntaxError("duplicate lengths header", lineno, indent + 1)
            start = line.index("lengths:") + len("lengths:")
            toks = [(m.group(), start + m.start() + 1) for m in _LETTER.finditer(line[start:])]
            if not toks:
                raise SubstitutionSyntaxError("lengths header is empty", lineno, start + 1)
            lengths_spec = (toks, lineno)
            continue
        if "->" not in line:
            raise SubstitutionSyntaxError("expected 'letter -> image'", lineno, indent + 1)
        arrow = line.index("->")
        head = line[:arrow].split()
        if len(head) != 1:
            col = indent + 1 if not head else line.index(head[1]) + 1
            raise SubstitutionSyntaxError("expected exactly one letter before '->'", lineno, col)
        letter = head[0]
        col = line.index(letter) + 1
        if letter in seen:
            raise SubstitutionSyntaxError(
                f"duplicate rule for {letter!r} (first defined on line {seen[letter]})", lineno, col)
        seen[letter] = lineno
        body = line[arrow + 2:]
        image = [(m.group(), arrow + 3 + m.start()) for m in _LETTER.finditer(body)]
        if not image:
            raise SubstitutionSyntaxError(f"empty image for {letter!r}", lineno, arrow + 3)
        rules.append((letter, image, lineno, col))
    if not rules:
        raise SubstitutionSyntaxError("no rules found", 1, 1)
    alphabet = tuple(r[0] for r in rules)
    index = {a: i for i, a in enumerate(alphabet)}
    images = []
    for letter, image, lineno, _ in rules:
        word = []
        for tok, col in image:
            if tok not in index:
                raise SubstitutionSyntaxError(f"unknown letter {tok!r} in image of {letter!r}",
                                              lineno, col)
            word.append(index[tok])
        images.append(tuple(word))
    override = None
    if lengths_spec is not None:
        toks, lineno = lengths_spec
        if len(toks) != len(alphabet):
            raise SubstitutionSyntaxError(
                f"lengths header gives {len(toks)} values for {len(alphabet)} letters", lineno, 1)
        polys = []
        for tok, col in toks:
            try:
                polys.append(parse_poly(tok, "L"))
            except ValueError as exc:
                raise SubstitutionSyntaxError(str(exc), lineno, col) from None
        override = tuple(polys)
    return Substitution(alphabet, tuple(images), override)


def substitution_matrix(s: Substitution) -> Matrix:
    """``M[i][j]`` = number of occurrences of letter i in the image of letter j."""
    n = s.size
    return Matrix([[s.images[j].count(i) for j in range(n)] for i in range(n)])


def is_primitive(s: Substitution) -> tuple[bool, int | None]:
    return is_primitive_matrix(substitution_matrix(s))


def is_proper(s: Substitution) -> bool:
    """All images share their first letter and all share their last letter."""
    return len({img[0] for img in s.images}) == 1 and len({img[-1] for img in s.images}) == 1


@dataclass(frozen=True)
class PerronData:
    """Perron-Frobenius data of a primitive substitution, exact in Q(lambda)."""

    field: NumberField
    lam: AlgebraicNumber
    q: IntPoly
    charpoly: IntPoly
    lengths: tuple[AlgebraicNumber, ...]
    letter_freqs: tuple[AlgebraicNumber, ...]
    lambda2_modulus_interval: tuple[Fraction, Fraction]

    def word_length(self, word: Sequence[int]) -> AlgebraicNumber:
        total = self.field.zero()
        for x in word:
            total = total + self.lengths[x]
        return total


def pf_root(f: IntPoly) -> tuple[IntPoly, tuple[Fraction, Fraction]]:
    """Irreducible factor of ``f`` carrying its largest real root, with isolating interval."""
    cands = []
    for fac, _ in factor_squarefree_then_irreducible(f):
        for iv in isolate_real_roots(fac):
            cands.append([fac, iv])
    if not cands:
        raise NotPrimitiveError("characteristic polynomial has no real root")
    while True:
        cands.sort(key=lambda c: c[1][1], reverse=True)
        top = cands[0]
        rest_hi = max((c[1][1] for c in cands[1:]), default=None)
        if rest_hi is None or top[1][0] > rest_hi or (top[1][0] == top[1][1] and top[1][0] > rest_hi):
            return top[0], top[1]
        for c in cands[:2]:
            c[1] = bisect_once(c[0], c[1])


def perron_data(s: Substitution, lengths: Sequence[IntPoly] | None = None) -> PerronData:
    """Exact PF eigenvalue, tile lengths (left eigenvector) and letter frequencies."""
    m = substitution_matrix(s)
    ok, _ = is_primitive_matrix(m)
    if not ok:
        raise NotPrimitiveError("substitution is not primitive")
    f = charpoly(m)
    q, iv = pf_root(f)
    field = NumberField(q, iv)
    lam = field.gen
    if not dominant_root_is_strict(m, lam):
        raise AssertionError("Perron-Frobenius root is not strictly dominant")
    n = s.size
    zero, one = field.zero(), field.one()

    def shifted(mat: Matrix) -> list[list[AlgebraicNumber]]:
        return [[field(mat[i, j]) - (lam if i == j else zero) for j in range(n)] for i in range(n)]

    left = field_nullspace(shifted(m.T), zero, one)
    right = field_nullspace(shifted(m), zero, one)
    if len(left) != 1 or len(right) != 1:
        raise AssertionError("Perron-Frobenius eigenvalue is not simple")
    natural = _primitive_lengths([v / left[0][-1] for v in left[0]])
    if lengths is None:
        lengths = s.length_override
    if lengths is not None:
        user = tuple(field.from_poly(p) for p in lengths)
        if any(u <= 0 for u in user):
            raise SubstitutionError("user lengths must be positive")
        if any(user[i] * natural[0] != user[0] * natural[i] for i in range(n)):
            raise SubstitutionError("user lengths are not a left Perron-Frobenius eigenvector")
        natural = user
    r = right[0]
    total = sum((r[i] * natural[i] for i in range(n)), zero)
    freqs = tuple(v / total for v in r)
    if any(v <= 0 for v in natural) or any(v <= 0 for v in freqs):
        raise AssertionError("Perron-Frobenius eigenvectors are not positive")
    return PerronData(
        field=field,
        lam=lam,
        q=q,
        charpoly=f,
        lengths=tuple(natural),
        letter_freqs=freqs,
        lambda2_modulus_interval=second_modulus_interval(m, lam),
    )


def _primitive_lengths(vec: list[AlgebraicNumber]) -> tuple[AlgebraicNumber, ...]:
    """Clear denominators, divide by the integer content, make positive."""
    den = 1
    for v in vec:
        for c in v.coords:
            den = lcm(den, c.denominator)
    ints = [[int(c * den) for c in v.coords] for v in vec]
    g = 0
    for row in ints:
        for c in row:
            g = gcd(g, c)
    out = [v * Fraction(den, g) for v in vec]
    if out[0] < 0:
        out = [-v for v in out]
    return tuple(out)


def periodicity_screen(s: Substitution, bound: int = 64) -> str:
    """Morse-Hedlund screen on factor complexity up to ``bound``.

    ``"periodic"`` is certain (some p(n) <= n).  ``"aperiodic-evidence"``
    means p(n) > n throughout and still growing at the bound;
    ``"inconclusive"`` means p(n) > n but the complexity has flattened,
    as it would for a period longer than the bound.
    """
    from .language import factor_complexity

    p = factor_complexity(s, bound)
    for n, pn in enumerate(p, start=1):
        if pn <= n:
            return "periodic"
    if len(p) >= 2 and p[-1] == p[-2]:
        return "inconclusive"
    return "aperiodic-evidence"
