"""Exact patch frequencies, the denominator form of frequencies, and the convergence harness."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .exactalg import AlgebraicNumber, IntPoly, integer_solve
from .exactalg.matrix import field_nullspace, strongly_connected
from .language import BlockSystem, anchored_count_vector, min_anchor_order
from .sampling import long_word, natural_positions, occurrence_mask, prefix_counts
from .substitution import PerronData, Substitution, Word


class FrequencyError(RuntimeError):
    pass


def collared_frequencies(bs: BlockSystem, pd: PerronData) -> tuple[AlgebraicNumber, ...]:
    """Right PF eigenvector of the collared matrix, per unit natural length."""
    n = bs.size
    adj = [[i for i in range(n) if bs.matrix[i, j]] for j in range(n)]
    if not strongly_connected(adj):
        raise FrequencyError("collared matrix is reducible")
    field, lam = pd.field, pd.lam
    zero, one = field.zero(), field.one()
    rows = [[field(bs.matrix[i, j]) - (lam if i == j else zero) for j in range(n)] for i in range(n)]
    kernel = field_nullspace(rows, zero, one)
    if len(kernel) != 1:
        raise FrequencyError("lambda is not a simple eigenvalue of the collared matrix")
    v = kernel[0]
    total = zero
    for c, x in zip(bs.letters, v):
        total = total + x * pd.lengths[c.center]
    freqs = tuple(x / total for x in v)
    if any(f <= 0 for f in freqs):
        raise FrequencyError("collared eigenvector is not positive")
    return freqs


def patch_frequency(patch: Sequence[int], bs: BlockSystem, pd: PerronData,
                    freqs: Sequence[AlgebraicNumber] | None = None) -> AlgebraicNumber:
    """Occurrences of ``patch`` per unit natural length."""
    freqs = collared_frequencies(bs, pd) if freqs is None else freqs
    n = min_anchor_order(bs, len(patch))
    values = anchored_count_vector(patch, bs, n).values
    total = pd.field.zero()
    for f, v in zip(freqs, values):
        if v:
            total = total + f * v
    return total / pd.lam ** n


def trace(combination: Sequence[tuple[Fraction | int, Word]],
          frequency: Callable[[Word], AlgebraicNumber]) -> AlgebraicNumber | Fraction:
    """Sum of c * f(P) over a formal combination of patches."""
    total: AlgebraicNumber | Fraction = Fraction(0)
    for c, patch in combination:
        total = frequency(patch) * Fraction(c) + total
    return total


@dataclass(frozen=True)
class Theorem4Form:
    """f = u(lambda) / (L * D * q'(lambda) * |q0|^n) with u integral."""

    u: IntPoly
    n: int
    L: AlgebraicNumber
    D: int
    qprime_at_lambda: AlgebraicNumber
    q0: int

    def value(self) -> AlgebraicNumber:
        field = self.L.field
        den = self.L * self.D * self.qprime_at_lambda * abs(self.q0) ** self.n
        return field.from_poly(self.u) / den


def theorem4_decompose(f: AlgebraicNumber, L: AlgebraicNumber, D: int, q: IntPoly,
                       n_max: int = 64) -> Theorem4Form:
    """Least n for which f * L * D * q'(lambda) * |q0|^n has integer power-basis coordinates."""
    q0 = q[0]
    if q0 == 0:
        raise ValueError("constant coefficient of q is zero")
    lam = f.field.gen
    qp = q.derivative()(lam)
    base = f * L * D * qp
    scale = 1
    for n in range(n_max + 1):
        val = base * scale
        if val.is_algebraic_integer_coords():
            return Theorem4Form(IntPoly(int(c) for c in val.coords), n, L, D, qp, q0)
        scale *= abs(q0)
    dens = sorted({c.denominator for c in base.coords})
    raise FrequencyError(f"no n <= {n_max} clears denominators {dens}")


def zspan_check(targets: Sequence[AlgebraicNumber],
                basis: Sequence[AlgebraicNumber]) -> list[tuple[bool, tuple[int, ...] | None]]:
    """For each target, whether it is an integer combination of ``basis`` (with the coefficients).

    Basis elements may be rationally dependent; a lattice solve handles that.
    """
    gens = [b.coords for b in basis]
    out = []
    for t in targets:
        sol = integer_solve(gens, t.coords)
        out.append((sol is not None, sol))
    return out


@dataclass(frozen=True)
class ConvergenceReport:
    patch: Word
    frequency: float
    theoretical_gamma: float
    fitted_exponent: float | None
    envelope_constant: float
    window_sizes: tuple[float, ...]
    deviations: tuple[float, ...]
    samples_per_scale: int
    seed: int
    word_length: int


def theoretical_gamma(pd: PerronData) -> float:
    lam1 = float(pd.lam)
    lo, hi = pd.lambda2_modulus_interval
    lam2 = float((lo + hi) / 2)
    if lam2 <= 0:
        return 1.0
    return min(1.0, 1.0 - math.log(lam2) / math.log(lam1))


def convergence_experiment(patch: Sequence[int], s: Substitution, pd: PerronData,
                           freq: AlgebraicNumber, sizes: Sequence[float],
                           samples: int = 2000, seed: int = 0) -> ConvergenceReport:
    """Sup deviation of the empirical frequency over random windows at each natural size."""
    sizes = sorted(float(v) for v in sizes)
    if len(sizes) < 8:
        raise ValueError(f"need at least 8 window scales, got {len(sizes)}")
    lengths = [float(x) for x in pd.lengths]
    min_tile = min(lengths)
    w = long_word(s, int(10 * max(sizes) / min_tile) + 1)
    pos = natural_positions(w, lengths)
    prefix = prefix_counts(occurrence_mask(w, patch))
    f = float(freq)
    rng = np.random.default_rng(seed)
    plen = len(patch)
    devs = []
    for v in sizes:
        last_start = int(np.searchsorted(pos, pos[-1] - v, side="right")) - 1
        starts = rng.integers(0, max(last_start, 1), size=samples)
        ends = np.searchsorted(pos, pos[starts] + v, side="left")
        ends = np.minimum(ends, len(w))
        vol = pos[ends] - pos[starts]
        last = np.maximum(ends - plen + 1, starts)
        counts = prefix[last] - prefix[starts]
        devs.append(float(np.max(np.abs(counts / vol - f))))
    vols = np.array(sizes)
    dev = np.array(devs)
    good = dev > 1e-15
    fitted = None
    if good.sum() >= 2:
        slope, _ = np.polyfit(np.log(vols[good]), np.log(dev[good]), 1)
        fitted = float(-slope)
    gamma = theoretical_gamma(pd)
    k = float(np.max(dev * vols ** gamma)) if len(dev) else 0.0
    return ConvergenceReport(tuple(patch), f, gamma, fitted, k, tuple(sizes), tuple(devs),
                             samples, seed, len(w))


def default_scales(top: float = 1e6, count: int = 11, bottom: float = 10.0) -> list[float]:
    return [float(x) for x in np.geomspace(bottom, top, count)]
