"""Seeded random reaction networks.

Randomness comes from SplitMix64 so fixtures can be reproduced anywhere:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    output z ^ (z >> 31)

``below(n)`` draws by rejection from the largest multiple of ``n`` under
2**64 and returns ``z mod n``.

Reaction ``j`` (1-based) is named ``rj`` with rates ``kfj``/``kbj``.
Species are ``S1 .. Sn``.  For each complex: draw its size in
``[1, min(max_species_per_complex, n)]`` (raised when needed so every
species gets used), take as many not-yet-used species as fit (in order of a
seeded shuffle), fill up with distinct random species,
and draw each coefficient in ``[1, max_stoich]``.  A product equal to its
reactant is redrawn up to 64 times.  Reversibility is
``below(2**53) < reversible_fraction * 2**53``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .network import Complex, Reaction, ReactionNetwork, Species, validate

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            z = self.next()
            if z < limit:
                return z % n

    def between(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


class GenerationError(ValueError):
    pass


@dataclass(frozen=True)
class GenConfig:
    seed: int = 1
    species_count: int = 2
    reaction_count: int = 1
    max_stoich: int = 1
    max_species_per_complex: int = 2
    reversible_fraction: Fraction = Fraction(1)

    def check(self) -> None:
        if self.species_count < 1 or self.reaction_count < 1:
            raise GenerationError("species and reaction counts must be at least 1")
        if self.max_stoich < 1 or self.max_species_per_complex < 1:
            raise GenerationError("max_stoich and max_species_per_complex must be at least 1")
        if not 0 <= Fraction(self.reversible_fraction) <= 1:
            raise GenerationError("reversible_fraction must lie in [0, 1]")
        if not 0 <= self.seed <= _MASK:
            raise GenerationError("seed must be a 64-bit unsigned integer")
        width = min(self.max_species_per_complex, self.species_count)
        if 2 * self.reaction_count * width < self.species_count:
            raise GenerationError(
                f"{self.reaction_count} reactions cannot touch all {self.species_count} species"
            )
        if self.species_count == 1 and self.max_stoich == 1:
            raise GenerationError("one species with coefficient 1 admits only one complex")


_THRESHOLD_BITS = 53


def generate(config: GenConfig) -> ReactionNetwork:
    """Deterministic random network for ``config``; always valid."""
    config.check()
    rng = SplitMix64(config.seed)
    n = config.species_count
    width = min(config.max_species_per_complex, n)
    uncovered = list(range(n))
    rng.shuffle(uncovered)
    threshold = Fraction(config.reversible_fraction) * (1 << _THRESHOLD_BITS)

    def draw_complex(remaining: int) -> tuple[Complex, int]:
        # remaining: complexes still to draw, this one included
        need = -(-len(uncovered) // remaining)
        size = max(rng.between(1, width), min(width, need))
        take = min(size, len(uncovered))
        chosen = uncovered[len(uncovered) - take:]
        while len(chosen) < size:
            s = rng.below(n)
            if s not in chosen:
                chosen.append(s)
        return Complex.from_mapping({s: rng.between(1, config.max_stoich) for s in chosen}), take

    reactions = []
    for j in range(config.reaction_count):
        remaining = 2 * (config.reaction_count - j)
        reactant, took = draw_complex(remaining)
        del uncovered[len(uncovered) - took:]
        for _ in range(64):
            product, took = draw_complex(remaining - 1)
            if product != reactant:
                del uncovered[len(uncovered) - took:]
                break
        else:
            raise GenerationError("could not draw two distinct complexes")
        reversible = rng.below(1 << _THRESHOLD_BITS) < threshold
        reactions.append(
            Reaction(
                id=j,
                reactant=reactant,
                product=product,
                reversible=reversible,
                forward_rate=f"kf{j + 1}",
                backward_rate=f"kb{j + 1}" if reversible else None,
                name=f"r{j + 1}",
            )
        )
    network = ReactionNetwork(tuple(Species(i, f"S{i + 1}") for i in range(n)), tuple(reactions))
    problems = validate(network)
    if problems:
        raise GenerationError("; ".join(problems))
    return network
