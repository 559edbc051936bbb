"""In-memory chemical reaction networks.

A network is a list of species and a list of reactions between complexes.
Everything here is immutable; build a network once and share it freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional


@dataclass(frozen=True)
class Species:
    id: int
    name: str


@dataclass(frozen=True)
class Complex:
    """A formal sum of species with positive integer coefficients.

    ``terms`` is a tuple of ``(species_id, coefficient)`` pairs sorted by
    species id.  The empty tuple is the zero complex.
    """

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "Complex":
        return cls(tuple(sorted((int(s), int(c)) for s, c in mapping.items())))

    def coefficient(self, species_id: int) -> int:
        for s, c in self.terms:
            if s == species_id:
                return c
        return 0

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    @property
    def species_ids(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms


@dataclass(frozen=True)
class Reaction:
    id: int
    reactant: Complex
    product: Complex
    reversible: bool
    forward_rate: str
    backward_rate: Optional[str] = None
    name: str = ""

    @property
    def rate_symbols(self) -> tuple[str, ...]:
        if self.backward_rate is None:
            return (self.forward_rate,)
        return (self.forward_rate, self.backward_rate)


@dataclass(frozen=True)
class ReactionNetwork:
    species: tuple[Species, ...] = ()
    reactions: tuple[Reaction, ...] = ()
    _species_index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "species", tuple(self.species))
        object.__setattr__(self, "reactions", tuple(self.reactions))
        object.__setattr__(self, "_species_index", {s.name: s.id for s in self.species})

    @property
    def n_species(self) -> int:
        return len(self.species)

    @property
    def n_reactions(self) -> int:
        return len(self.reactions)

    def species_id(self, name: str) -> int:
        try:
            return self._species_index[name]
        except KeyError:
            raise KeyError(f"unknown species {name!r}") from None

    def reaction(self, reaction_id: int) -> Reaction:
        if not 0 <= reaction_id < len(self.reactions):
            raise KeyError(f"unknown reaction id {reaction_id}")
        return self.reactions[reaction_id]

    @property
    def rate_symbols(self) -> list[str]:
        return [sym for r in self.reactions for sym in r.rate_symbols]

    def is_reversible(self) -> bool:
        """True when every reaction is reversible (vacuously for no reactions)."""
        return all(r.reversible for r in self.reactions)


class NetworkError(ValueError):
    """Raised when a network cannot be constructed or fails validation."""

    def __init__(self, violations: Iterable[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))


def build_network(
    species_names: Iterable[str],
    reactions: Iterable[tuple],
) -> ReactionNetwork:
    """Convenience constructor from plain Python data.

    Each reaction is ``(reactant, product, forward_rate, backward_rate)``
    with complexes given as ``{species_name: coefficient}`` dicts and
    ``backward_rate`` ``None`` for an irreversible reaction.  An optional
    fifth element names the reaction.  Raises :class:`NetworkError` if the
    result does not validate.
    """
    species = tuple(Species(i, name) for i, name in enumerate(species_names))
    index = {s.name: s.id for s in species}
    built = []
    for rid, item in enumerate(reactions):
        reactant, product, kf, kb = item[:4]
        name = item[4] if len(item) > 4 else f"r{rid + 1}"
        built.append(
            Reaction(
                id=rid,
                reactant=Complex.from_mapping({index[s]: c for s, c in reactant.items()}),
                product=Complex.from_mapping({index[s]: c for s, c in product.items()}),
                reversible=kb is not None,
                forward_rate=kf,
                backward_rate=kb,
                name=name,
            )
        )
    network = ReactionNetwork(species, tuple(built))
    problems = validate(network)
    if problems:
        raise NetworkError(problems)
    return network


def net_change(network: ReactionNetwork, reaction_id: int, species_id: int) -> int:
    """Product coefficient minus reactant coefficient of a species."""
    reaction = network.reaction(reaction_id)
    if not 0 <= species_id < network.n_species:
        raise KeyError(f"unknown species id {species_id}")
    return reaction.product.coefficient(species_id) - reaction.reactant.coefficient(species_id)


def partition(network: ReactionNetwork) -> tuple[list[int], list[int]]:
    """Split reaction ids into (reversible, irreversible), keeping order."""
    reversible = [r.id for r in network.reactions if r.reversible]
    irreversible = [r.id for r in network.reactions if not r.reversible]
    return reversible, irreversible


def validate(network: ReactionNetwork) -> list[str]:
    """Return every structural problem found; an empty list means valid."""
    problems: list[str] = []
    names_seen: set[str] = set()
    for pos, sp in enumerate(network.species):
        if sp.id != pos:
            problems.append(f"species {sp.name!r} has id {sp.id}, expected {pos}")
        if not sp.name:
            problems.append(f"species {pos} has an empty name")
        if sp.name in names_seen:
            problems.append(f"duplicate species name {sp.name!r}")
        names_seen.add(sp.name)

    used: set[int] = set()
    rates_seen: set[str] = set()
    n = network.n_species
    for pos, rxn in enumerate(network.reactions):
        label = rxn.name or f"#{pos}"
        if rxn.id != pos:
            problems.append(f"reaction {label} has id {rxn.id}, expected {pos}")
        for side, cplx in (("reactant", rxn.reactant), ("product", rxn.product)):
            ids = [s for s, _ in cplx.terms]
            if len(set(ids)) != len(ids):
                problems.append(f"reaction {label}: {side} lists a species twice")
            for s, c in cplx.terms:
                if not 0 <= s < n:
                    problems.append(f"reaction {label}: {side} references undeclared species {s}")
                if c < 1:
                    problems.append(f"reaction {label}: {side} coefficient {c} of species {s} is not positive")
                used.add(s)
        if rxn.reactant == rxn.product:
            problems.append(f"reaction {label}: reactant equals product")
        if rxn.reversible != (rxn.backward_rate is not None):
            problems.append(f"reaction {label}: backward rate must be present exactly when reversible")
        for sym in rxn.rate_symbols:
            if not sym:
                problems.append(f"reaction {label}: empty rate symbol")
            elif sym in rates_seen:
                problems.append(f"duplicate rate symbol {sym!r}")
            rates_seen.add(sym)
    for sp in network.species:
        if sp.id not in used:
            problems.append(f"species {sp.name!r} is not referenced by any reaction")
    return problems
