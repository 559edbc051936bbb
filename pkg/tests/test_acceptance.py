"""Exit criteria.  Each test prints one ``ACCEPTANCE n PASS|FAIL`` line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines inline;
they are also repeated in the terminal summary.
"""

import contextlib
import io
import random
import statistics
import time
from dataclasses import replace
from fractions import Fraction

import pytest
import sympy

from crnbinom import fixtures
from crnbinom.cli import main
from crnbinom.engine import VerdictKind, analyze, test_general, test_reversible
from crnbinom.groebner import binomiality_via_gb, ideal_equal
from crnbinom.kinetics import check_decomposition, network_ring, ode_generators, reaction_binomial
from crnbinom.matrix import RationalMatrix, rref
from crnbinom.netgen import GenConfig, generate
from crnbinom.network import Complex, ReactionNetwork, Species
from crnbinom.parser import format_network, parse_network

from conftest import small_config, small_network

pytestmark = pytest.mark.acceptance

RESULTS = []

F = Fraction


def report(n, ok, detail):
    line = f"ACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def check_fixture(name):
    text = fixtures.path(name).read_text()
    return timed(lambda: analyze(parse_network(text)))


def as_lists(m):
    return [list(r) for r in m.entries]


def test_criterion_1_water_gas():
    rep, elapsed = check_fixture("water_gas")
    net = rep.network
    ring = network_ring(net)
    x1, x2, x3, x4, x5 = (ring.gen(f"x{i}") for i in range(1, 6))
    k12, k21, k34, k43 = (ring.gen(k) for k in ("k12", "k21", "k34", "k43"))
    expected = (-k12 * x1 * x2 + k21 * x3 * x4, -k34 * x3**2 + k43 * x1 * x5)
    ok = (
        as_lists(rep.coefficient_matrix) == [[1, -1], [1, 0], [-1, 2], [-1, 0], [0, -1]]
        and as_lists(rep.rref.matrix) == [[1, 0], [0, 1], [0, 0], [0, 0], [0, 0]]
        and rep.kind is VerdictKind.BINOMIAL
        and rep.verdict.generators == expected
        and elapsed < 0.010
    )
    report(1, ok, f"water-gas matrix, rref and generators exact; {elapsed * 1e3:.2f} ms (< 10 ms)")


def test_criterion_2_four_a():
    rep, elapsed = check_fixture("four_a")
    b = reaction_binomial(rep.network, 0).poly
    ok = (
        as_lists(rep.coefficient_matrix) == [[3], [-1]]
        and rep.kind is VerdictKind.BINOMIAL
        and rep.verdict.generators == (b,)
        and elapsed < 0.010
    )
    report(2, ok, f"4A <=> A+B matrix (3, -1), single generator b; {elapsed * 1e3:.2f} ms (< 10 ms)")


def test_criterion_3_triangle():
    rep, elapsed = check_fixture("triangle")
    ok = (
        as_lists(rep.coefficient_matrix) == [[2, 1, 1], [-2, -1, -1]]
        and as_lists(rep.rref.matrix) == [[1, F(1, 2), F(1, 2)], [0, 0, 0]]
        and rep.kind is VerdictKind.NOT_BINOMIAL
        and elapsed < 0.010
    )
    report(3, ok, f"triangle rows (2,1,1)/(-2,-1,-1), rref (1, 1/2, 1/2), NotBinomial; {elapsed * 1e3:.2f} ms")


def _sympy_identity(net):
    # independent restatement: mass-action ODEs and binomials built from scratch
    x = sympy.symbols([f"s{i}" for i in range(net.n_species)])
    mono = lambda cplx: sympy.Mul(*[x[s] ** c for s, c in cplx.terms])
    ode = [0] * net.n_species
    total = [0] * net.n_species
    for r in net.reactions:
        kf, kb = sympy.symbols([r.forward_rate, r.backward_rate])
        flux = kf * mono(r.reactant) - kb * mono(r.product)
        b = -flux
        for s in range(net.n_species):
            alpha, beta = r.reactant.coefficient(s), r.product.coefficient(s)
            ode[s] += (beta - alpha) * flux
            total[s] += (alpha - beta) * b
    return all(sympy.expand(a - t) == 0 for a, t in zip(ode, total))


def test_criterion_4_decomposition():
    nets = [small_network(s, max_species=6, max_reactions=6, max_stoich=3) for s in range(500)]
    bad = [i for i, n in enumerate(nets) if not check_decomposition(n)]
    # the symbolic oracle is slower, so it covers every fifth network
    bad_oracle = [i for i in range(0, 500, 5) if not _sympy_identity(nets[i])]
    ok = not bad and not bad_oracle
    report(4, ok, f"p_k = sum c*b on 500/500 networks (failures {bad}); sympy restatement on 100 (failures {bad_oracle})")


def test_criterion_5_oracle_agreement():
    start = time.perf_counter()
    disagreements, counts = [], {True: 0, False: 0}
    for seed in range(200):
        net = small_network(seed, max_species=4, max_reactions=4, max_stoich=2)
        verdict = test_reversible(net).kind is VerdictKind.BINOMIAL
        oracle = binomiality_via_gb(net)
        counts[oracle] += 1
        if verdict != oracle:
            disagreements.append(seed)
    elapsed = time.perf_counter() - start
    ok = not disagreements and elapsed < 300
    report(
        5,
        ok,
        f"200/200 agree with the Groebner oracle ({counts[True]} binomial, {counts[False]} not); "
        f"disagreements {disagreements}; {elapsed:.2f} s (< 300 s)",
    )


def _permute_species(net, perm):
    # perm[old] = new id
    species = [None] * net.n_species
    for s in net.species:
        species[perm[s.id]] = Species(perm[s.id], s.name)
    remap = lambda c: Complex.from_mapping({perm[s]: k for s, k in c.terms})
    rxns = [replace(r, reactant=remap(r.reactant), product=remap(r.product)) for r in net.reactions]
    return ReactionNetwork(tuple(species), tuple(rxns))


def _permute_reactions(net, order):
    return ReactionNetwork(net.species, tuple(replace(net.reactions[j], id=i) for i, j in enumerate(order)))


def _rename_rates(net):
    return ReactionNetwork(
        net.species,
        tuple(replace(r, forward_rate=f"q{r.id}b", backward_rate=f"q{r.id}a") for r in net.reactions),
    )


def _swap_sides(net):
    return ReactionNetwork(
        net.species,
        tuple(
            replace(r, reactant=r.product, product=r.reactant, forward_rate=r.backward_rate, backward_rate=r.forward_rate)
            for r in net.reactions
        ),
    )


def test_criterion_6_invariances():
    failures = []
    for seed in range(100):
        net = small_network(seed, max_species=5, max_reactions=5, max_stoich=2)
        rng = random.Random(seed)
        perm = list(range(net.n_species))
        rng.shuffle(perm)
        order = list(range(net.n_reactions))
        rng.shuffle(order)
        base = analyze(net).kind
        variants = {
            "species": _permute_species(net, perm),
            "reactions": _permute_reactions(net, order),
            "rates": _rename_rates(net),
            "swap": _swap_sides(net),
        }
        for name, other in variants.items():
            if analyze(other).kind is not base:
                failures.append((seed, name))
    report(6, not failures, f"verdict unchanged under 4 transformations on 100 networks; failures {failures}")


def _random_matrix(rng):
    rows, cols = rng.randint(1, 10), rng.randint(1, 10)
    density = rng.choice((0.3, 0.6, 1.0))
    entries = [[rng.randint(-6, 6) if rng.random() < density else 0 for _ in range(cols)] for _ in range(rows)]
    if rows > 1 and rng.random() < 0.3:
        # force a dependent row
        a, b = rng.sample(range(rows), 2)
        entries[a] = [2 * v - w for v, w in zip(entries[b], entries[rng.randrange(rows)])]
    return RationalMatrix.from_rows(entries, n_cols=cols)


def _in_row_space(rows, target):
    # exact solvability of y^T * rows = target
    basis = sympy.Matrix(rows).T
    try:
        basis.gauss_jordan_solve(sympy.Matrix(target))
    except ValueError:
        return False
    return True


def _sym(m):
    return [[sympy.Rational(x.numerator, x.denominator) for x in row] for row in m.entries]


def test_criterion_7_rref_properties():
    rng = random.Random(2024)
    failures = []
    for i in range(500):
        a = _random_matrix(rng)
        r = rref(a).matrix
        idempotent = rref(r).matrix.entries == r.entries
        forward = all(_in_row_space(_sym(r), row) for row in _sym(a))
        backward = all(_in_row_space(_sym(a), row) for row in _sym(r))
        if not (idempotent and forward and backward):
            failures.append(i)
    report(7, not failures, f"idempotence and row space both ways on 500 matrices up to 10x10; failures {failures}")


def test_criterion_8_large_scale(tmp_path):
    times = []
    for seed in range(10):
        path = tmp_path / f"net{seed}.crn"
        path.write_text(format_network(generate(GenConfig(seed=seed, species_count=52, reaction_count=86))))
        with contextlib.redirect_stdout(io.StringIO()):
            code, elapsed = timed(lambda: main(["check", str(path), "--format", "json"]))
        assert code in (0, 1)
        times.append(elapsed)
    median = statistics.median(times)
    report(
        8,
        median < 1.0,
        f"52 x 86 end-to-end check, median {median * 1e3:.1f} ms over 10 seeds "
        f"(min {min(times) * 1e3:.1f}, max {max(times) * 1e3:.1f}; < 1000 ms)",
    )


def test_criterion_9_parser():
    failures = []
    for seed in range(200):
        cfg = small_config(seed, max_species=6, max_reactions=6, max_stoich=3, reversible_fraction=Fraction(seed % 5, 4))
        net = generate(cfg)
        if parse_network(format_network(net)) != net:
            failures.append(seed)
    loaded = [fixtures.load(name) for name in ("water_gas", "four_a", "triangle")]
    ok = not failures and all(n.n_reactions for n in loaded)
    report(9, ok, f"parse(format(n)) == n on 200 networks (failures {failures}); 3 fixture files parse")


def test_criterion_10_general_path():
    mismatched = [
        s
        for s in range(100)
        if test_general(small_network(s)).kind is not test_reversible(small_network(s)).kind
    ]
    confirmed, mixed_confirmed, refuted, inconclusive, flagged = 0, 0, [], 0, []
    for seed in range(50):
        net = small_network(seed, reversible_fraction=Fraction(7, 10))
        rep = test_general(net)
        if rep.kind is VerdictKind.INCONCLUSIVE:
            inconclusive += 1
            if rep.monomial_generators_present:
                # monomial generators: the oracle must refuse binomiality and the
                # emitted generator set must still span the steady-state ideal
                cols = [rep.columns[c] for c in rep.rref.pivot_cols]
                if binomiality_via_gb(net) or not ideal_equal(list(ode_generators(net)), cols):
                    refuted.append(seed)
                flagged.append(seed)
            continue
        if rep.kind is VerdictKind.BINOMIAL:
            if binomiality_via_gb(net):
                confirmed += 1
                mixed_confirmed += rep.irreversible_count > 0
            else:
                refuted.append(seed)
    ok = not mismatched and not refuted
    report(
        10,
        ok,
        f"general == reversible on 100/100 (mismatches {mismatched}); mixed: {confirmed} Binomial confirmed "
        f"({mixed_confirmed} with irreversible reactions), "
        f"{inconclusive} Inconclusive ({len(flagged)} with monomial generators), failures {refuted}",
    )
