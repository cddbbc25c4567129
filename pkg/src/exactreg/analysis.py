"""One substitution, all derived structures, computed on first use."""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .cohomology import CohomologyPresentation, PatchClass, action_polynomials, patch_class
from .exactalg import AlgebraicNumber, IntPoly, Matrix
from .frequency import Theorem4Form, collared_frequencies, patch_frequency, theorem4_decompose
from .language import factors
from .regularity import ControlPatchSet, controls_from_patches, find_control_patches, min_return_length
from .substitution import PerronData, Substitution, SubstitutionError, Word, perron_data


class IllegalPatchError(SubstitutionError):
    pass


class Workbench:
    """Exact analysis of a primitive substitution.

    ``collar_radius`` sets the radius of the collared alphabet used for
    cohomology and frequencies.  ``return_length`` overrides the default L
    (least return length) as a polynomial in the stretching factor.
    """

    def __init__(self, s: Substitution, collar_radius: int = 1,
                 return_length: IntPoly | None = None,
                 lengths: Sequence[IntPoly] | None = None):
        self.substitution = s
        self.collar_radius = collar_radius
        self._return_length = return_length
        self._lengths = lengths
        self._freq_cache: dict[Word, AlgebraicNumber] = {}
        self._class_cache: dict[Word, PatchClass] = {}

    @cached_property
    def perron(self) -> PerronData:
        return perron_data(self.substitution, self._lengths)

    @cached_property
    def presentation(self) -> CohomologyPresentation:
        return action_polynomials(self.substitution, self.collar_radius, self.perron)

    @cached_property
    def collared_freqs(self) -> tuple[AlgebraicNumber, ...]:
        return collared_frequencies(self.presentation.block_system, self.perron)

    @cached_property
    def return_length(self) -> AlgebraicNumber:
        if self._return_length is not None:
            return self.perron.field.from_poly(self._return_length)
        return min_return_length(self.substitution, self.perron)

    def word(self, text: str) -> Word:
        return self.substitution.word(text)

    def require_legal(self, patch: Sequence[int]) -> Word:
        p = tuple(patch)
        if p not in factors(self.substitution, len(p)):
            raise IllegalPatchError(f"{self.substitution.format_word(p)!r} is not a legal factor")
        return p

    def frequency(self, patch: Sequence[int]) -> AlgebraicNumber:
        p = tuple(patch)
        if p not in self._freq_cache:
            pres = self.presentation
            self._freq_cache[p] = patch_frequency(p, pres.block_system, self.perron, self.collared_freqs)
        return self._freq_cache[p]

    def patch_class(self, patch: Sequence[int]) -> PatchClass:
        p = tuple(patch)
        if p not in self._class_cache:
            self._class_cache[p] = patch_class(p, self.presentation)
        return self._class_cache[p]

    def controls(self, patches: Sequence[Word] | None = None, max_len: int = 8) -> ControlPatchSet:
        if patches:
            return controls_from_patches(self.presentation, patches)
        return find_control_patches(self.presentation, max_len)

    def coefficients(self, patch: Sequence[int], controls: ControlPatchSet) -> tuple[Fraction, ...]:
        return controls.classes.solve(self.patch_class(patch).coords)

    def trace(self, combination: Sequence[tuple[Fraction | int, Word]]) -> AlgebraicNumber:
        total = self.perron.field.zero()
        for c, p in combination:
            total = total + self.frequency(p) * Fraction(c)
        return total

    def class_trace(self, coords: Sequence[Fraction]) -> AlgebraicNumber:
        """Frequency pairing of an eventual-image class."""
        tf = self.presentation.trace_functional(self.collared_freqs)
        total = self.perron.field.zero()
        for t, y in zip(tf, coords):
            if y:
                total = total + t * y
        return total

    def theorem4(self, patch: Sequence[int], n_max: int = 64) -> Theorem4Form:
        pres = self.presentation
        return theorem4_decompose(self.frequency(patch), self.return_length, pres.D, pres.q, n_max)

    def bezout_matrices(self) -> tuple[Matrix, Matrix]:
        """Q(A) q(A) and R(A) r(A)."""
        pres = self.presentation
        a, w = pres.A, pres.witness
        return a.polyval(w.Q) @ a.polyval(pres.q), a.polyval(w.R) @ a.polyval(pres.r)
