"""Mass-action polynomials of a reaction network.

Species concentrations become variables ``x1, ..., xn`` and every rate
symbol becomes its own variable.  A reversible reaction with forward rate
``kf`` and backward rate ``kb`` carries the binomial
``-kf*m(reactant) + kb*m(product)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .network import Complex, ReactionNetwork, net_change
from .polynomial import RATE, SPECIES, Monomial, Polynomial, PolyRing, Variable


@lru_cache(maxsize=256)
def network_ring(network: ReactionNetwork) -> PolyRing:
    """Ring of species variables followed by rate variables in reaction order."""
    species = [Variable(SPECIES, s.id, f"x{s.id + 1}") for s in network.species]
    rates = [Variable(RATE, j, sym) for j, sym in enumerate(network.rate_symbols)]
    return PolyRing(species + rates)


def species_names(network: ReactionNetwork) -> dict[Variable, str]:
    """Rendering map that prints species variables by their network names."""
    return {v: network.species[v.index].name for v in network_ring(network).variables if v.kind == SPECIES}


def complex_monomial(complex_: Complex, ring: PolyRing) -> Monomial:
    """Product of species variables raised to their coefficients; the zero
    complex gives the monomial 1."""
    exps = [0] * ring.nvars
    for s, c in complex_.terms:
        exps[s] = c  # species variables occupy the first ring slots
    return tuple(exps)


def _rate_monomial(ring: PolyRing, network: ReactionNetwork, symbol: str, base: Monomial) -> Monomial:
    exps = list(base)
    exps[network.n_species + network.rate_symbols.index(symbol)] += 1
    return tuple(exps)


@dataclass(frozen=True)
class ReactionBinomial:
    reaction_id: int
    poly: Polynomial


def _flux_terms(network: ReactionNetwork, reaction_id: int) -> tuple[Monomial, Monomial | None]:
    ring = network_ring(network)
    rxn = network.reaction(reaction_id)
    fwd = _rate_monomial(ring, network, rxn.forward_rate, complex_monomial(rxn.reactant, ring))
    if not rxn.reversible:
        return fwd, None
    bwd = _rate_monomial(ring, network, rxn.backward_rate, complex_monomial(rxn.product, ring))
    return fwd, bwd


def reaction_binomial(network: ReactionNetwork, reaction_id: int) -> ReactionBinomial:
    if not network.reaction(reaction_id).reversible:
        raise ValueError(f"reaction {reaction_id} is irreversible and has no associated binomial")
    fwd, bwd = _flux_terms(network, reaction_id)
    poly = Polynomial(network_ring(network), {fwd: -1, bwd: 1})
    return ReactionBinomial(reaction_id, poly)


def monomial_term(network: ReactionNetwork, reaction_id: int) -> Polynomial:
    """Forward rate times the reactant monomial (the flux of an irreversible reaction)."""
    fwd, _ = _flux_terms(network, reaction_id)
    return Polynomial(network_ring(network), {fwd: 1})


def rate_term(network: ReactionNetwork, reaction_id: int) -> Polynomial:
    """Net flux: ``kf*m(reactant) - kb*m(product)``, or ``kf*m(reactant)``."""
    fwd, bwd = _flux_terms(network, reaction_id)
    coeffs = {fwd: 1}
    if bwd is not None:
        coeffs[bwd] = -1
    return Polynomial(network_ring(network), coeffs)


@dataclass(frozen=True)
class GeneratorSet:
    network: ReactionNetwork
    generators: tuple[Polynomial, ...]

    def __getitem__(self, species_id: int) -> Polynomial:
        return self.generators[species_id]

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)


def ode_generators(network: ReactionNetwork) -> GeneratorSet:
    """Right-hand sides ``dx_k/dt`` of the mass-action ODE system."""
    ring = network_ring(network)
    acc: list[dict] = [{} for _ in network.species]
    for rxn in network.reactions:
        flux = rate_term(network, rxn.id)
        for s in set(rxn.reactant.species_ids) | set(rxn.product.species_ids):
            change = net_change(network, rxn.id, s)
            if not change:
                continue
            row = acc[s]
            for m, c in flux.coeffs.items():
                row[m] = row.get(m, 0) + change * c
    return GeneratorSet(network, tuple(Polynomial(ring, row) for row in acc))


def decomposition_coefficient(network: ReactionNetwork, reaction_id: int, species_id: int) -> int:
    """Coefficient of the reaction binomial in ``p_k``: reactant minus product
    coefficient of the species."""
    if not network.reaction(reaction_id).reversible:
        raise ValueError(f"reaction {reaction_id} is irreversible")
    return -net_change(network, reaction_id, species_id)


def check_decomposition(network: ReactionNetwork) -> bool:
    """Verify ``p_k == sum_r c(r, k) * b_r`` exactly for every species."""
    if not network.is_reversible():
        raise ValueError("decomposition into reaction binomials needs an all-reversible network")
    gens = ode_generators(network)
    ring = network_ring(network)
    binomials = [reaction_binomial(network, r.id).poly for r in network.reactions]
    for sp in network.species:
        total = ring.zero
        for r, b in zip(network.reactions, binomials):
            c = decomposition_coefficient(network, r.id, sp.id)
            if c:
                total = total + c * b
        if total != gens[sp.id]:
            return False
    return True
