"""Group presentations and census entry types.

A GroupPresentation is immutable after construction and carries optional
peripheral (meridian, longitude) word pairs, one per cusp, plus optional
torsion representatives (word, order) used by the torsion-free filter.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .words import Word, exponent_sums, free_reduce, parse_word, render_word


class PresentationError(ValueError):
    """Raised when presentation data violates its invariants."""


def _default_names(n: int) -> tuple[str, ...]:
    # a..z, then x1, x2, ... for rewritten presentations
    base = "abcdefghijklmnopqrstuvwxyz"
    if n <= 26:
        return tuple(base[:n])
    return tuple(base) + tuple(f"x{i}" for i in range(1, n - 25))


@dataclass(frozen=True)
class GroupPresentation:
    generator_count: int
    relators: tuple[Word, ...]
    generator_names: tuple[str, ...] = ()
    peripheral: tuple[tuple[Word, Word], ...] = ()
    torsion_reps: tuple[tuple[Word, int], ...] = ()

    def __post_init__(self):
        if self.generator_count < 1:
            raise PresentationError("generator_count must be positive")
        names = self.generator_names or _default_names(self.generator_count)
        if len(names) != self.generator_count:
            raise PresentationError("generator_names length mismatch")
        object.__setattr__(self, "generator_names", tuple(names))
        object.__setattr__(
            self, "relators", tuple(free_reduce(r) for r in self.relators)
        )
        object.__setattr__(
            self,
            "peripheral",
            tuple((free_reduce(m), free_reduce(l)) for m, l in self.peripheral),
        )
        object.__setattr__(
            self,
            "torsion_reps",
            tuple((free_reduce(w), int(n)) for w, n in self.torsion_reps),
        )
        for w, n in self.torsion_reps:
            if n < 2:
                raise PresentationError("torsion orders must be >= 2")
        for w in self._all_words():
            for x in w:
                if not 1 <= abs(x) <= self.generator_count:
                    raise PresentationError(
                        f"letter {x} outside generator range 1..{self.generator_count}"
                    )

    def _all_words(self):
        yield from self.relators
        for m, l in self.peripheral:
            yield m
            yield l
        for w, _ in self.torsion_reps:
            yield w

    @property
    def cusps(self) -> int:
        return len(self.peripheral)

    def word(self, text: str) -> Word:
        return parse_word(text, self.generator_names)

    def render(self, word: Sequence[int]) -> str:
        return render_word(word, self.generator_names)

    def relator_matrix(self) -> list[list[int]]:
        """Exponent-sum matrix of the relators (rows) over generators (cols)."""
        return [exponent_sums(r, self.generator_count) for r in self.relators]

    def with_relator(self, relator: Sequence[int]) -> "GroupPresentation":
        return GroupPresentation(
            generator_count=self.generator_count,
            relators=self.relators + (free_reduce(relator),),
            generator_names=self.generator_names,
            peripheral=self.peripheral,
            torsion_reps=self.torsion_reps,
        )

    @classmethod
    def from_strings(
        cls,
        generators: Sequence[str],
        relators: Sequence[str],
        peripheral: Sequence[tuple[str, str]] = (),
        torsion: Sequence[tuple[str, int]] = (),
    ) -> "GroupPresentation":
        gens = tuple(generators)
        return cls(
            generator_count=len(gens),
            generator_names=gens,
            relators=tuple(parse_word(r, gens) for r in relators),
            peripheral=tuple(
                (parse_word(m, gens), parse_word(l, gens)) for m, l in peripheral
            ),
            torsion_reps=tuple((parse_word(w, gens), n) for w, n in torsion),
        )


@dataclass(frozen=True)
class ExpectedInvariants:
    """Published invariants a census entry is validated against.

    eta is indexed from subgroup index 2, matching every quoted list.
    """

    eta: tuple[int, ...] = ()
    homology: Optional[str] = None
    cusps: Optional[int] = None
    congruence_ideal: Optional[str] = None


@dataclass(frozen=True)
class CensusEntry:
    name: str
    presentation: GroupPresentation
    aliases: tuple[str, ...] = ()
    expected: Optional[ExpectedInvariants] = None
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.expected and self.expected.cusps is not None:
            if self.expected.cusps != self.presentation.cusps:
                raise PresentationError(
                    f"census entry {self.name}: expected.cusps={self.expected.cusps} "
                    f"but presentation has {self.presentation.cusps} peripheral pairs"
                )
