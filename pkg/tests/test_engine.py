from dataclasses import replace
from fractions import Fraction
import json

import pytest

from crnbinom.cli import report_document
from crnbinom.engine import (
    VerdictKind,
    analyze,
    assemble_report,
    build_binomial_matrix,
    build_irreversible_matrix,
    test_general as general,
    test_reversible as reversible,
)
from crnbinom.groebner import binomiality_via_gb, ideal_equal
from crnbinom.kinetics import ode_generators, reaction_binomial
from crnbinom.network import ReactionNetwork
from crnbinom.parser import parse_network
from crnbinom.polynomial import is_binomial

from conftest import small_network

F = Fraction


def entries(m):
    return [list(r) for r in m.entries]


def test_binomial_matrix_fixtures(water_gas, four_a, triangle):
    assert entries(build_binomial_matrix(water_gas)) == [[1, -1], [1, 0], [-1, 2], [-1, 0], [0, -1]]
    assert entries(build_binomial_matrix(four_a)) == [[3], [-1]]
    assert entries(build_binomial_matrix(triangle)) == [[2, 1, 1], [-2, -1, -1]]


def test_binomial_matrix_labels(water_gas):
    m = build_binomial_matrix(water_gas)
    assert m.row_labels == ("CO2", "H2", "CO", "H2O", "C")
    assert m.col_labels == ("b[r1]", "b[r2]")


def test_reversible_water_gas(water_gas):
    rep = reversible(water_gas)
    assert rep.kind is VerdictKind.BINOMIAL
    assert [str(g) for g in rep.verdict.generators] == ["-k12*x1*x2 + k21*x3*x4", "-k34*x3^2 + k43*x1*x5"]
    assert rep.verdict.witness_rows == ()


def test_reversible_triangle(triangle):
    rep = reversible(triangle)
    assert rep.kind is VerdictKind.NOT_BINOMIAL
    assert rep.verdict.witness_rows == ((0, (0, 1, 2)),)
    assert rep.verdict.generators == ()


def test_reversible_four_a(four_a):
    rep = reversible(four_a)
    assert rep.kind is VerdictKind.BINOMIAL
    assert rep.verdict.generators == (reaction_binomial(four_a, 0).poly,)


def test_reversible_rejects_irreversible():
    with pytest.raises(ValueError):
        reversible(parse_network("r: A -> B [k]"))


def test_irreversible_matrix():
    assert build_irreversible_matrix(parse_network("r: A <=> B [k, j]")).shape == (2, 0)
    assert entries(build_irreversible_matrix(parse_network("r: 0 -> A [k]"))) == [[1]]
    assert entries(build_irreversible_matrix(parse_network("r: A -> B [k]"))) == [[-1], [1]]


def test_general_single_irreversible():
    rep = general(parse_network("r: A -> B [k]"))
    # rows of the block matrix are singletons, but the generator k*x1 is a monomial
    assert entries(rep.rref.matrix) == [[1], [0]]
    assert rep.monomial_generators_present
    assert rep.kind is VerdictKind.INCONCLUSIVE
    assert rep.verdict.witness_rows == ((0, (0,)),)


def test_general_water_gas_plus_irreversible(water_gas):
    net = parse_network(
        "r1: 1 CO2 + 1 H2 <=> 1 CO + 1 H2O [k12, k21]\n"
        "r2: 2 CO <=> 1 CO2 + 1 C [k34, k43]\n"
        "r3: 1 C -> 1 CO2 [k5]"
    )
    rep = general(net)
    assert rep.coefficient_matrix.shape == (5, 3)
    assert rep.kind is VerdictKind.INCONCLUSIVE and rep.monomial_generators_present
    # the oracle run: the reduced basis holds the monomial k5*x5, so the ideal is not binomial
    assert binomiality_via_gb(net) is False
    picked = [rep.columns[c] for c in rep.rref.pivot_cols]
    assert ideal_equal(picked, list(ode_generators(net)))


def test_general_agrees_on_fixtures(water_gas, triangle, four_a):
    for net in (water_gas, triangle, four_a):
        assert general(net).kind is reversible(net).kind


def test_general_block_rows_stay_aligned():
    # rref of (M1 | M2) taken row-aligned; reducing M1 alone and gluing M2 unchanged
    # would pair reduced rows with the wrong species
    net = parse_network("r1: A <=> B [k1, k2]\nr2: B -> 0 [k3]")
    rep = general(net)
    assert entries(rep.rref.matrix) == [[1, 0], [0, 1]]
    assert ideal_equal([rep.columns[c] for c in rep.rref.pivot_cols], list(ode_generators(net)))


@pytest.mark.parametrize("seed", range(60))
def test_binomial_generators_generate_same_ideal(seed):
    net = small_network(seed, max_species=3, max_reactions=3)
    rep = reversible(net)
    if rep.kind is VerdictKind.BINOMIAL:
        assert all(is_binomial(g) for g in rep.verdict.generators)
        assert ideal_equal(list(rep.verdict.generators), list(ode_generators(net)))


def _swap(net, rid):
    rxns = list(net.reactions)
    r = rxns[rid]
    rxns[rid] = replace(r, reactant=r.product, product=r.reactant, forward_rate=r.backward_rate, backward_rate=r.forward_rate)
    return ReactionNetwork(net.species, tuple(rxns))


def _named(poly):
    names = [str(v) for v in poly.ring.variables]
    return {frozenset((names[i], e) for i, e in enumerate(m) if e): c for c, m in poly.terms}


@pytest.mark.parametrize("seed", range(30))
def test_side_swap_negates_column(seed):
    net = small_network(seed)
    swapped = _swap(net, 0)
    a, b = build_binomial_matrix(net), build_binomial_matrix(swapped)
    assert [row[0] for row in a.entries] == [-row[0] for row in b.entries]
    assert _named(reaction_binomial(swapped, 0).poly) == _named(-reaction_binomial(net, 0).poly)
    assert reversible(swapped).kind is reversible(net).kind


def test_report_timings_and_schema(water_gas):
    rep = assemble_report(analyze(water_gas), parse=0.001)
    assert set(rep.timings) == {"parse", "build", "rref", "combine"}
    doc = json.loads(json.dumps(report_document(rep)))
    assert doc["verdict"] == "Binomial" and doc["witness_rows"] == []


@pytest.mark.parametrize("seed", range(40))
def test_witnesses_empty_iff_binomial(seed):
    net = small_network(seed, reversible_fraction=F(3, 4))
    rep = analyze(net)
    assert (rep.verdict.witness_rows == ()) == (rep.kind is VerdictKind.BINOMIAL)
    assert (len(rep.verdict.generators) > 0 or net.n_reactions == 0) == (rep.kind is VerdictKind.BINOMIAL)
    if rep.kind is VerdictKind.NOT_BINOMIAL:
        assert net.is_reversible()
    if rep.kind is VerdictKind.INCONCLUSIVE:
        assert not net.is_reversible()


def test_empty_network():
    rep = reversible(ReactionNetwork())
    assert rep.kind is VerdictKind.BINOMIAL and rep.verdict.generators == ()
