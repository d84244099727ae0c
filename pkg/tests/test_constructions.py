import pytest

from liaison import (BettiTable, FamilyParams, Ideal, PolynomialRing, GF,
                     build_linked_points, cancellation_reachable, chain_verify,
                     family_witness, find_reg_seq, free_resolution,
                     hypersurface_section, is_regular_sequence, link,
                     min_reg_seq_degrees, socle_degree_bound_check,
                     stable_shape_check, template_table)
from liaison.constructions import (evaluate, koszul_hilbert_function,
                                   vanishes_at, verify_reduced_points)


def test_parameter_validation():
    with pytest.raises(ValueError):
        FamilyParams(2, 5, 6, 9)       # a1 = 2 excluded
    with pytest.raises(ValueError):
        FamilyParams(1, 3, 5, 8)       # a1 + 3 > a2
    with pytest.raises(ValueError):
        FamilyParams(1, 4, 4, 8)       # a2 < a3 fails
    with pytest.raises(ValueError):
        FamilyParams(1, 5, 6, 8)       # a2 + a3 > min(2,a1) + a4
    FamilyParams(1, 4, 5, 8)
    FamilyParams(3, 6, 7, 11)


def test_template_table_shape():
    T = template_table(FamilyParams(1, 4, 5, 8))
    assert T == {(0, 2): 2, (0, 4): 1, (0, 5): 1, (0, 9): 1,
                 (1, 3): 1, (1, 5): 1, (1, 6): 1, (1, 9): 1, (1, 10): 2,
                 (2, 10): 1, (2, 11): 1}


def test_cancellation_reachability():
    T = BettiTable({(0, 2): 2, (1, 2): 1, (1, 5): 1, (2, 5): 1})
    # cancel the (0,2)/(1,2) pair and the (1,5)/(2,5) pair
    assert cancellation_reachable(T, BettiTable({(0, 2): 1}))
    assert cancellation_reachable(T, T)
    # cannot create entries out of nothing
    assert not cancellation_reachable(T, BettiTable({(0, 1): 1, (0, 2): 2,
                                                     (1, 2): 1}))
    # cancellations come in consecutive pairs only
    assert not cancellation_reachable(T, BettiTable({(0, 2): 2, (1, 2): 1,
                                                     (1, 5): 1}))


def test_bundle_invariants(family_148):
    fam = family_148
    assert fam.I.height() == 3
    assert fam.degree() == 28
    assert fam.mindegs == (2, 4, 9)
    assert fam.is_cm
    assert fam.star.holds
    assert fam.chain.terminal_is_ci
    assert all(s.back_verified for s in fam.chain.steps)
    assert fam.chain.steps[-1].target == fam.I1


def test_bundle_point_decomposition(family_148):
    fam = family_148
    assert {k: len(v) for k, v in fam.points.items()} == {
        "I": 28, "J": 152, "I1": 8, "C1": 180, "C2": 160}
    for g in fam.I.gens:
        assert all(vanishes_at(g, p) for p in fam.points["I"])
    assert verify_reduced_points(fam.I, fam.points["I"], unmixed=fam.is_cm)


def test_star_fails_on_the_complete_intersection(family_148):
    star = stable_shape_check(family_148.I1, family_148.params, seed=3)
    assert not star.holds
    assert not star.shape_ok


def test_seed_stability():
    invariants = []
    for seed in (11, 12):
        fam = build_linked_points(FamilyParams(1, 4, 5, 8), seed=seed)
        invariants.append((fam.I.height(), fam.degree(), fam.mindegs,
                           fam.hilbert_data.hvector, fam.is_cm,
                           fam.star.holds,
                           tuple(sorted(fam.star.minimal_table.items()))))
    assert invariants[0] == invariants[1]


def test_minimal_double_link_preserves_shape(family_148):
    fam = family_148
    params = fam.params
    seq1 = find_reg_seq(fam.I, (2, 4, 9), seed=301)
    step1 = link(fam.I, seq1)
    assert step1.minimal
    J = step1.target
    assert min_reg_seq_degrees(J) == (2, 4, 9)
    seq2 = find_reg_seq(J, (2, 4, 9), seed=302)
    step2 = link(J, seq2)
    assert step2.minimal
    twice = step2.target
    assert stable_shape_check(twice, params, seed=303).holds
    # the intermediate link is Cohen-Macaulay but never Gorenstein
    B = free_resolution(J).betti()
    assert not B.is_symmetric()
    assert B.total_rank(B.max_index()) >= 2


def test_residual_socle_violation(family_148):
    # a regular sequence of degrees (2, a2, a4 - a3 + 2) = (2, 4, 5) in the
    # link would need degree sum > 13, certifying none exists
    fam = family_148
    seq1 = find_reg_seq(fam.I, (2, 4, 9), seed=301)
    J = link(fam.I, seq1).target
    check = socle_degree_bound_check(J, (2, 4, 5))
    assert not check.passes
    assert check.bound == 13 and check.degree_sum == 11


def test_koszul_hilbert_function_values():
    # complete intersection of degrees (3,3,4) in three variables
    assert koszul_hilbert_function((3, 3, 4), 3, 7) == 1
    assert sum(koszul_hilbert_function((3, 3, 4), 3, d)
               for d in range(20)) == 36


def test_evaluate_points(family_148):
    ring = family_148.ring
    f = ring.parse("x0 + 2*x1 + 3*x2 + 4*x3")
    assert evaluate(f, (1, 0, 0, 0)) == 1
    assert evaluate(f, (0, 1, 1, 1)) == 9


def test_hypersurface_lift_small_instance_replays_links():
    # height-2 instance small enough to recompute the lifted colons
    ring = PolynomialRing(["x", "y", "z"], GF(32003))
    x, y, z = ring.gens()
    I = Ideal([x * x, x * y, y * y])
    chain = chain_verify(I, [[x * x, y * y]])
    assert chain.terminal == Ideal([x, y])
    lift = hypersurface_section(I, chain, seed=2)
    assert lift.degree == 2  # height 2 times regularity 1
    assert all(s.method == "link" and s.verified for s in lift.steps)
    assert lift.ideal.height() == 3
    assert lift.mindegs == (2, 2, 2)


def test_hypersurface_lift_rejects_small_degree(family_148):
    with pytest.raises(ValueError):
        hypersurface_section(family_148.I, family_148.chain, degree=5,
                             witness=family_witness(family_148))


def test_witness_validation_catches_corruption(family_148):
    wit = family_witness(family_148)
    bad = dict(wit)
    bad["points"] = dict(wit["points"])
    bad["points"]["I"] = wit["points"]["I"][:-1]  # drop a point
    with pytest.raises(ValueError):
        hypersurface_section(family_148.I, family_148.chain, witness=bad)


def test_general_parameters_branch():
    fam = build_linked_points(FamilyParams(3, 6, 7, 11), seed=4)
    assert fam.I.height() == 3
    assert fam.degree() == 6 * 7 + 3 * 11
    assert fam.mindegs == (2, 6, 12)
    assert fam.is_cm and fam.star.holds
    assert not fam.points
