import itertools
import random

import pytest

from icsie.codeset import (enum_interference, first_witness, in_interference,
                           in_support_family, interference_masks,
                           is_valid_generator, oracle_decodable)
from icsie.errors import BudgetExceededError
from icsie.gfield import field_for
from icsie.linalg import Matrix, hamming_weight, mask_of
from icsie.sigraph import ProblemSpec, SideInfoGraph, clique_graph

from conftest import all_unipartite_graphs, random_generator

F2 = field_for(2)

CLIQUE4 = ProblemSpec(graph=clique_graph(4), q=2, delta_s=1)
PAPER_G4 = Matrix(F2, [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]])


def test_clique4_interference_is_all_but_0000_and_1111():
    zs = [z for z, _ in enum_interference(CLIQUE4)]
    assert len(zs) == 14
    assert (0, 0, 0, 0) not in zs
    assert (1, 1, 1, 1) not in zs
    assert set(zs) == {z for z in itertools.product((0, 1), repeat=4)
                       if 1 <= hamming_weight(z) <= 3}


def test_enum_is_lexicographic_and_deduplicated():
    zs = [z for z, _ in enum_interference(CLIQUE4)]
    assert zs == sorted(zs)
    assert len(zs) == len(set(zs))


def test_witness_is_smallest_receiver():
    for z, i in enum_interference(CLIQUE4):
        assert in_interference(CLIQUE4, z, i)
        assert all(not in_interference(CLIQUE4, z, j) for j in range(1, i))
    assert first_witness(CLIQUE4, (0, 0, 0, 0)) is None


def test_delta0_single_receiver():
    g = SideInfoGraph.make(2, [1], [{2}])
    spec = ProblemSpec(graph=g, q=2, delta_s=0)
    assert [z for z, _ in enum_interference(spec)] == [(1, 0)]


def test_interference_masks_match_tuples():
    for spec in (CLIQUE4, ProblemSpec(graph=clique_graph(3), q=2, delta_s=0)):
        masks = interference_masks(spec)
        assert masks == sorted(masks)
        assert masks == [mask_of(z) for z, _ in enum_interference(spec)]


def test_budget_enforced():
    g = SideInfoGraph.make(30, [1], [set(range(2, 31))])
    spec = ProblemSpec(graph=g, q=2, delta_s=0)
    with pytest.raises(BudgetExceededError):
        list(enum_interference(spec))
    with pytest.raises(BudgetExceededError):
        oracle_decodable(ProblemSpec(graph=clique_graph(13), q=2, delta_s=0),
                         Matrix.identity(F2, 13))


def test_support_family_clique4():
    assert in_support_family(CLIQUE4, {1, 2, 3})
    assert not in_support_family(CLIQUE4, {1, 2, 3, 4})
    assert in_support_family(CLIQUE4, {CLIQUE4.graph.f[0]})
    with pytest.raises(ValueError):
        in_support_family(CLIQUE4, set())


@pytest.mark.parametrize("q", [2, 3])
def test_support_family_equals_interference_supports(q):
    # K is a support pattern iff it is the exact support of some z in I
    rng = random.Random(q)
    graphs = list(all_unipartite_graphs(3)) + [clique_graph(4)]
    for g in graphs:
        for ds in (0, 1):
            spec = ProblemSpec(graph=g, q=q, delta_s=ds)
            supports = {frozenset(j + 1 for j, v in enumerate(z) if v)
                        for z, _ in enum_interference(spec)}
            for r in range(1, g.n + 1):
                for K in itertools.combinations(range(1, g.n + 1), r):
                    assert in_support_family(spec, K) == (frozenset(K) in supports)


def test_monotone_in_delta_s():
    small = {z for z, _ in enum_interference(
        ProblemSpec(graph=clique_graph(4), q=2, delta_s=0))}
    large = {z for z, _ in enum_interference(CLIQUE4)}
    assert small <= large


def test_erasure_mode_halves_the_cap():
    spec_err = ProblemSpec(graph=clique_graph(4), q=2, delta_s=1)
    spec_era = ProblemSpec(graph=clique_graph(4), q=2, delta_s=1,
                           side_error_model="erasure")
    era = {z for z, _ in enum_interference(spec_era)}
    err = {z for z, _ in enum_interference(spec_err)}
    assert era < err
    assert era == {z for z in itertools.product((0, 1), repeat=4)
                   if 1 <= hamming_weight(z) <= 2}


def test_paper_clique4_generator_valid():
    ok, z = is_valid_generator(CLIQUE4, PAPER_G4)
    assert ok and z is None


def test_identity_always_valid():
    for n in (1, 2, 3, 4):
        spec = ProblemSpec(graph=clique_graph(n), q=2, delta_s=1)
        assert is_valid_generator(spec, Matrix.identity(F2, n))[0]


def test_repeated_row_invalid_with_witness():
    G = Matrix(F2, [[1, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]])
    ok, z = is_valid_generator(CLIQUE4, G)
    assert not ok
    assert z == (1, 1, 0, 0)      # first failing z in lexicographic order


def test_validity_counts_codeword_weight_for_channel_errors():
    spec = ProblemSpec(graph=clique_graph(2), q=2, delta_s=0, delta_c=1)
    # identity is valid without channel errors but its rows have weight 1 < 3
    assert not is_valid_generator(spec, Matrix.identity(F2, 2))[0]
    rep = Matrix(F2, [[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1]])
    assert is_valid_generator(spec, rep)[0]


def test_oracle_known_cases():
    assert oracle_decodable(CLIQUE4, PAPER_G4)
    assert oracle_decodable(CLIQUE4, Matrix.identity(F2, 4))
    assert not oracle_decodable(CLIQUE4, Matrix.zero(F2, 4, 3))


def test_oracle_generic_field_path():
    f3 = field_for(3)
    g = clique_graph(3)
    spec = ProblemSpec(graph=g, q=3, delta_s=1)
    assert oracle_decodable(spec, Matrix.identity(f3, 3))
    assert not oracle_decodable(spec, Matrix.zero(f3, 3, 2))


def test_theorem1_equivalence_sampled():
    # the central equivalence, on a quick sampled slice (the full sweep is
    # the acceptance module's criterion 3)
    rng = random.Random(99)
    graphs = list(all_unipartite_graphs(3))
    for _ in range(120):
        g = graphs[rng.randrange(len(graphs))]
        spec = ProblemSpec(graph=g, q=2, delta_s=rng.choice((0, 1)),
                           delta_c=rng.choice((0, 1)))
        N = rng.randrange(1, g.n + 2 * spec.delta_c + 1)
        G = random_generator(rng, 2, g.n, N)
        assert is_valid_generator(spec, G)[0] == oracle_decodable(spec, G)
