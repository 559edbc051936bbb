from fractions import Fraction

import pytest

from crnbinom import fixtures
from crnbinom.netgen import GenConfig, generate


@pytest.fixture
def water_gas():
    return fixtures.load("water_gas")


@pytest.fixture
def four_a():
    return fixtures.load("four_a")


@pytest.fixture
def triangle():
    return fixtures.load("triangle")


def small_config(seed, *, max_species=4, max_reactions=4, max_stoich=2, reversible_fraction=Fraction(1)):
    """Config cycling through every size up to the given bounds.

    Species counts are capped at what the reactions can touch.
    """
    reactions = 1 + (seed // max_species) % max_reactions
    return GenConfig(
        seed=seed,
        species_count=min(1 + seed % max_species, 4 * reactions),
        reaction_count=reactions,
        max_stoich=max_stoich,
        max_species_per_complex=2,
        reversible_fraction=reversible_fraction,
    )


def small_network(seed, **kwargs):
    return generate(small_config(seed, **kwargs))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
