"""Control patches, exact regularity coefficients, and their verification on long words."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

from .cohomology import CohomologyPresentation, patch_class
from .exactalg import AlgebraicNumber, Matrix
from .language import count_anchored, factors, iterate_word, min_order_for_length
from .sampling import WindowHasher, long_word, occurrence_mask, prefix_counts
from .substitution import PerronData, Substitution, Word, is_proper


class RegularityError(RuntimeError):
    pass


class CertificateError(RegularityError):
    pass


@dataclass(frozen=True)
class ReturnWordReport:
    letter: int
    return_words: tuple[Word, ...]
    return_lengths: tuple[AlgebraicNumber, ...]
    L_default: AlgebraicNumber | None


def _return_words_of(s: Substitution, letter: int, max_len: int) -> list[Word]:
    out = []
    for n in range(1, max_len + 1):
        for u in factors(s, n + 1):
            if u[0] == letter and u[-1] == letter and letter not in u[1:-1]:
                out.append(u[:-1])
    return sorted(out, key=lambda w: (len(w), w))


def min_return_length(s: Substitution, pd: PerronData, max_len: int = 64) -> AlgebraicNumber:
    """Least natural length of a return word, over all letters."""
    best = None
    for letter in range(s.size):
        words = []
        n = 2
        while not words:
            if n > max_len:
                raise RegularityError(f"no return word of length <= {max_len} for letter {letter}")
            words = _return_words_of(s, letter, n)
            n *= 2
        for w in words:
            v = pd.word_length(w)
            if best is None or v < best:
                best = v
    return best


def return_words(s: Substitution, letter: int, max_len: int, pd: PerronData) -> ReturnWordReport:
    words = _return_words_of(s, letter, max_len)
    return ReturnWordReport(letter, tuple(words), tuple(pd.word_length(w) for w in words),
                            min_return_length(s, pd))


@dataclass(frozen=True)
class ControlPatchSet:
    patches: tuple[Word, ...]
    classes: Matrix  # column i = class coordinates of patches[i]
    provenance: str
    scanned: int = 0


def find_control_patches(pres: CohomologyPresentation, max_len: int = 8) -> ControlPatchSet:
    """Greedy (length, lexicographic) scan for k patches with independent classes."""
    s = pres.substitution
    kept: list[Word] = []
    cols: list[tuple[Fraction, ...]] = []
    scanned = 0
    for n in range(1, max_len + 1):
        for p in sorted(factors(s, n)):
            scanned += 1
            c = patch_class(p, pres).coords
            if Matrix.from_columns(cols + [c]).rank() == len(cols) + 1:
                kept.append(p)
                cols.append(c)
                if len(kept) == pres.k:
                    return ControlPatchSet(tuple(kept), Matrix.from_columns(cols),
                                           f"greedy scan, length<={n}", scanned)
    raise RegularityError(
        f"control search reached rank {len(kept)} of {pres.k} with patches up to length {max_len}")


def controls_from_patches(pres: CohomologyPresentation, patches: Sequence[Word]) -> ControlPatchSet:
    if len(patches) != pres.k:
        raise RegularityError(f"need exactly {pres.k} control patches, got {len(patches)}")
    cols = [patch_class(p, pres).coords for p in patches]
    m = Matrix.from_columns(cols)
    if m.rank() != pres.k:
        raise RegularityError("control patch classes are linearly dependent")
    return ControlPatchSet(tuple(tuple(p) for p in patches), m, "user supplied")


def solve_coefficients(patch: Sequence[int], controls: ControlPatchSet,
                       pres: CohomologyPresentation, order: int | None = None) -> tuple[Fraction, ...]:
    y = patch_class(patch, pres, order).coords
    return controls.classes.solve(y)


# verification ------------------------------------------------------------

@dataclass(frozen=True)
class SampleConfig:
    samples: int = 10_000
    seed: int = 0
    min_word: int = 10**6
    max_window: int = 10**5
    rho_start: int | None = None
    rho_cap: int | None = None


@dataclass(frozen=True)
class RegularityCertificate:
    patch: Word
    controls: tuple[Word, ...]
    coefficients: tuple[Fraction, ...]
    collar_radius: int
    error_bound: Fraction
    derived_bound: Fraction
    boundary_map_checked: bool
    windows: int
    distinct_collar_pairs: int
    max_error_short: Fraction
    max_error_long: Fraction
    word_length: int
    seed: int
    notes: tuple[str, ...] = field(default=())


class _Counts:
    """Scaled prefix counts of P minus the control combination, over one long word."""

    def __init__(self, prefix_of, patch: Word, controls: Sequence[Word], coeffs: Sequence[Fraction]):
        self.den = 1
        for c in coeffs:
            self.den = lcm(self.den, Fraction(c).denominator)
        self.weights = [int(Fraction(c) * self.den) for c in coeffs]
        self.patches = [tuple(patch)] + [tuple(p) for p in controls]
        self.prefix = [prefix_of(p) for p in self.patches]
        h = self.den * self.prefix[0]
        for a, pre in zip(self.weights, self.prefix[1:]):
            if a:
                h = h - a * pre
        self.h = h  # scaled running error at every cut point

    def window_error(self, starts: np.ndarray, ends: np.ndarray) -> np.ndarray:
        total = None
        for i, (pre, p) in enumerate(zip(self.prefix, self.patches)):
            last = np.maximum(ends - len(p) + 1, starts)
            cnt = pre[last] - pre[starts]
            term = self.den * cnt if i == 0 else -self.weights[i - 1] * cnt
            total = term if total is None else total + term
        return total


def _single_valued(keys: Sequence[np.ndarray], values: np.ndarray) -> tuple[bool, int]:
    """Whether ``values`` is a function of the key tuple; also the number of distinct keys."""
    if len(values) == 0:
        return True, 0
    order = np.lexsort((values,) + tuple(reversed(keys)))
    v = values[order]
    same_key = np.ones(len(v) - 1, dtype=bool)
    for k in keys:
        ks = k[order]
        same_key &= ks[1:] == ks[:-1]
    clash = same_key & (v[1:] != v[:-1])
    distinct = int(np.count_nonzero(~same_key)) + 1
    return not bool(clash.any()), distinct


class Verifier:
    """One long legal word with cached occurrence counts, shared by many certificates."""

    def __init__(self, s: Substitution, config: SampleConfig = SampleConfig()):
        self.s = s
        self.config = config
        self.word = long_word(s, config.min_word)
        self.n = len(self.word)
        self.hasher = WindowHasher(self.word)
        self._prefix: dict[Word, np.ndarray] = {}
        self._cut_keys: dict[int, tuple[np.ndarray, np.ndarray]] = {}

    def prefix(self, patch: Word) -> np.ndarray:
        patch = tuple(patch)
        if patch not in self._prefix:
            self._prefix[patch] = prefix_counts(occurrence_mask(self.word, patch))
        return self._prefix[patch]

    def _keys(self, rho: int) -> tuple[np.ndarray, np.ndarray]:
        if rho not in self._cut_keys:
            cuts = np.arange(rho, self.n - rho + 1)
            self._cut_keys[rho] = self.hasher.hashes(cuts - rho, 2 * rho)
        return self._cut_keys[rho]

    def boundary_radius(self, counts: _Counts, rho_start: int, rho_cap: int) -> int | None:
        """Least rho in the doubling sequence making the running error a function of w[s-rho:s+rho]."""
        rho = rho_start
        while rho <= rho_cap:
            ok, _ = _single_valued(self._keys(rho), counts.h[rho:self.n - rho + 1])
            if ok:
                return rho
            rho *= 2
        return None

    def certify(self, patch: Sequence[int], coeffs: Sequence[Fraction],
                controls: Sequence[Word]) -> RegularityCertificate:
        cfg = self.config
        patch = tuple(patch)
        n = self.n
        counts = _Counts(self.prefix, patch, controls, coeffs)
        longest = max(len(p) for p in counts.patches)
        rho0 = cfg.rho_start or longest
        cap = cfg.rho_cap or 64 * rho0
        rho = self.boundary_radius(counts, rho0, cap)
        if rho is None:
            raise CertificateError(f"running error is not determined by collars of radius <= {cap}")
        hv = counts.h[rho:n - rho + 1]
        alpha_range = Fraction(int(hv.max() - hv.min()), counts.den)
        # occurrences cut off at the right end of a window
        edge = Fraction(len(patch) - 1) + sum(abs(Fraction(c)) * (len(p) - 1)
                                              for c, p in zip(coeffs, controls))
        bound = alpha_range + edge

        rng = np.random.default_rng(cfg.seed)
        lo = max(2 * longest, 2)
        hi = min(cfg.max_window, n - 2 * rho - 1)
        if hi <= lo:
            raise CertificateError("word too short for the requested windows")
        lengths = np.exp(rng.uniform(np.log(lo), np.log(hi), size=cfg.samples)).astype(np.int64)
        starts = rng.integers(rho, n - rho - lengths + 1)
        ends = starts + lengths
        err = counts.window_error(starts, ends)
        max_abs = Fraction(int(np.abs(err).max()), counts.den)
        if max_abs > bound:
            raise CertificateError(f"window error {max_abs} exceeds the bound {bound}")
        l1, l2 = self.hasher.hashes(starts - rho, 2 * rho)
        r1, r2 = self.hasher.hashes(ends - rho, 2 * rho)
        ok, distinct = _single_valued((l1, l2, r1, r2), err)
        if not ok:
            raise CertificateError(f"window error is not determined by radius-{rho} collars")
        median = np.median(lengths)
        short = np.abs(err[lengths <= median])
        long_ = np.abs(err[lengths > median])
        return RegularityCertificate(
            patch=patch,
            controls=tuple(tuple(p) for p in controls),
            coefficients=tuple(Fraction(c) for c in coeffs),
            collar_radius=rho,
            error_bound=max_abs,
            derived_bound=bound,
            boundary_map_checked=True,
            windows=cfg.samples,
            distinct_collar_pairs=distinct,
            max_error_short=Fraction(int(short.max()) if len(short) else 0, counts.den),
            max_error_long=Fraction(int(long_.max()) if len(long_) else 0, counts.den),
            word_length=n,
            seed=cfg.seed,
        )


def verify_certificate(patch: Sequence[int], coeffs: Sequence[Fraction], controls: ControlPatchSet,
                       s: Substitution, config: SampleConfig = SampleConfig()) -> RegularityCertificate:
    """Check bounded, boundary-determined error of the counting law on sampled windows."""
    return Verifier(s, config).certify(patch, coeffs, controls.patches)


# exact vanishing on supertiles --------------------------------------------

@dataclass(frozen=True)
class SupertileRow:
    region: Word
    right: Word
    n: int
    error: Fraction


@dataclass(frozen=True)
class SupertileReport:
    rows: tuple[SupertileRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.error == 0 for r in self.rows)

    def failures(self) -> list[SupertileRow]:
        return [r for r in self.rows if r.error != 0]


def letter_contexts(s: Substitution) -> list[tuple[Word, Word]]:
    """(region, right context) pairs (l2, l3) from legal triples l1 l2 l3."""
    return sorted({((t[1],), (t[2],)) for t in factors(s, 3)})


def return_word_contexts(s: Substitution, max_len: int = 8) -> list[tuple[Word, Word]]:
    out = []
    for letter in range(s.size):
        for w in _return_words_of(s, letter, max_len):
            out.append((w, (w[0],)))
    return out


def exact_on_supertiles(patch: Sequence[int], coeffs: Sequence[Fraction], controls: ControlPatchSet,
                        s: Substitution, n_range: Sequence[int],
                        contexts: Sequence[tuple[Word, Word]] | None = None) -> SupertileReport:
    """Error of the counting law on phi^n(region) with right context phi^n(right)."""
    patch = tuple(patch)
    if contexts is None:
        if not is_proper(s):
            raise RegularityError("letter contexts need a proper substitution; pass contexts explicitly")
        contexts = letter_contexts(s)
    longest = max([len(patch)] + [len(p) for p in controls.patches])
    n0 = min_order_for_length(s, longest)
    rows = []
    for n in n_range:
        if n < n0:
            continue
        for region, right in contexts:
            body = iterate_word(s, region, n)
            ctx = iterate_word(s, right, n)
            e = Fraction(count_anchored(patch, body, ctx))
            for c, p in zip(coeffs, controls.patches):
                e -= Fraction(c) * count_anchored(p, body, ctx)
            rows.append(SupertileRow(tuple(region), tuple(right), n, e))
    return SupertileReport(tuple(rows))
