import pytest

from liaison import (Ideal, LinkError, RegularSequenceError, chain_verify,
                     find_reg_seq, free_resolution, is_complete_intersection,
                     is_regular_sequence, link, min_reg_seq_degrees,
                     monomial_double_link, monomial_licci_scan,
                     socle_degree_bound_check, standard_form)

from conftest import (EX23_STEPS, EX23_TARGETS, THM24_STEPS, THM24_TARGETS,
                      parse_ideal, random_mprimary_monomial, seeded_rng)


# ---------------------------------------------------------------------------
# regular sequences

def test_variables_are_regular(ring_qq3):
    x, y, z = ring_qq3.gens()
    cert = is_regular_sequence([x, y, z])
    assert cert.degrees == (1, 1, 1) and cert.verified


def test_monomial_ci_certificate(ring_qq3):
    cert = is_regular_sequence([ring_qq3.parse(s) for s in ("z^3", "x^4", "y^6")])
    assert cert.degrees == (3, 4, 6)


def test_failure_reports_index(ring_qq3):
    x, y, z = ring_qq3.gens()
    with pytest.raises(RegularSequenceError) as err:
        is_regular_sequence([x, x * y])
    assert err.value.index == 2


def test_min_degrees_on_fixtures(ideal_ex23, ideal_thm24, ring_qq3):
    assert min_reg_seq_degrees(ideal_ex23) == (3, 4, 6)
    assert min_reg_seq_degrees(ideal_thm24) == (3, 3, 6)
    mixed = parse_ideal(ring_qq3, ["x", "y^2", "z^3"])
    assert min_reg_seq_degrees(mixed) == (1, 2, 3)


def test_find_reg_seq_at_minimal_degrees(ideal_ex23):
    cert = find_reg_seq(ideal_ex23, (3, 4, 6), seed=3)
    assert cert.degrees == (3, 4, 6)
    for f in cert.forms:
        assert ideal_ex23.contains(f)


def test_find_reg_seq_linear_forms(ring_qq3):
    x, y, z = ring_qq3.gens()
    cert = find_reg_seq(Ideal([x, y, z]), (1, 1, 1), seed=9)
    assert cert.degrees == (1, 1, 1)


def test_find_reg_seq_infeasible_degrees_exhaust(ideal_thm24):
    with pytest.raises(RegularSequenceError) as err:
        find_reg_seq(ideal_thm24, (3, 3, 4), seed=5)
    assert err.value.index == 3


def test_impossibility_is_certified_by_dimension_count(ideal_thm24, ring_qq3):
    # any regular sequence of degrees (3,3,4) would span 35 dimensions in
    # degree 7, but the forms of degree <= 5 only span at most 32 there
    ci = parse_ideal(ring_qq3, ["x^3", "y^3", "z^4"])
    assert ci.graded_piece_dim(7) == 35
    low_part = ideal_thm24.truncate(5)
    assert low_part.graded_piece_dim(7) <= 32
    assert low_part.height() == 2


# ---------------------------------------------------------------------------
# direct links

def test_link_first_step(ideal_ex23, ring_qq3):
    cert = is_regular_sequence([ring_qq3.parse(s)
                                for s in ("z^3", "x^4", "y^6")])
    step = link(ideal_ex23, cert)
    assert step.target == parse_ideal(
        ring_qq3, ["z^3", "x^3*y", "x^4", "x^3*z - x*y*z^2", "y^5"])
    assert step.minimal and step.back_verified


def test_link_non_minimal_flag(ideal_thm24, ring_qq3):
    cert = is_regular_sequence([ring_qq3.parse(s) for s in
                                ("x^2*y + y^3 - y*z^2 - z^3",
                                 "y^2*z^2 - z^4", "x^6")])
    step = link(ideal_thm24, cert)
    assert step.target == parse_ideal(
        ring_qq3, ["x^2*y + y^3 - y*z^2 - z^3", "z^4", "y^2*z^2",
                   "x*z^3", "x^5"])
    assert not step.minimal
    assert step.minimal_degrees == (3, 3, 6)


def test_self_link_rejected(ring_qq3):
    x, y, z = ring_qq3.gens()
    with pytest.raises(LinkError):
        link(Ideal([x, y, z]), is_regular_sequence([x, y, z]))


def test_link_requires_containment(ring_qq3, ideal_ex23):
    x, y, z = ring_qq3.gens()
    with pytest.raises(LinkError):
        link(ideal_ex23, is_regular_sequence([x, y, z]))


def test_double_link_involution_on_both_engines(ring_qq3, ideal_ex23):
    L = parse_ideal(ring_qq3, ["z^3", "x^4", "y^6"])
    for engine in ("intersection", "syzygy"):
        J = L.quotient(ideal_ex23, engine=engine)
        assert L.quotient(J, engine=engine) == ideal_ex23


# ---------------------------------------------------------------------------
# standard form / monomial reductions

def test_standard_form_of_fixture(ideal_ex22, ring_qq3):
    sf = standard_form(ideal_ex22)
    assert sf.pure_powers == (4, 6, 3)
    assert sf.sharp == parse_ideal(ring_qq3, ["x*y*z", "x^3*y", "y^5*z",
                                              "x*y^5"])


def test_standard_form_pure_ci(ring_qq3):
    sf = standard_form(parse_ideal(ring_qq3, ["x^2", "y^2", "z^2"]))
    assert sf.pure_powers == (2, 2, 2)
    assert sf.sharp.is_zero()


def test_standard_form_two_variables():
    from liaison import PolynomialRing, QQ
    R2 = PolynomialRing(["x", "y"], QQ)
    sf = standard_form(parse_ideal(R2, ["x^2", "x*y", "y^3"]))
    assert sf.pure_powers == (2, 3)
    assert sf.sharp == parse_ideal(R2, ["x*y"])


def test_standard_form_requires_primary(ring_qq3):
    with pytest.raises(ValueError):
        standard_form(parse_ideal(ring_qq3, ["x^2", "x*y"]))


def test_double_link_reduction(ideal_ex22, ring_qq3):
    reduced, (before, after) = monomial_double_link(ideal_ex22)
    assert reduced == parse_ideal(ring_qq3, ["x*z", "x^3", "y^4*z", "x*y^4",
                                             "z^3", "y^5"])
    assert before.degrees == (4, 6, 3)
    assert after.degrees == (4, 5, 3)


def test_double_link_unit_cofactor_rejected():
    from liaison import PolynomialRing, QQ
    R2 = PolynomialRing(["x", "y"], QQ)
    with pytest.raises(ValueError):
        monomial_double_link(parse_ideal(R2, ["x^2", "y^2", "x*y"]))


def test_double_link_requires_sharp_part(ring_qq3):
    with pytest.raises(ValueError):
        monomial_double_link(parse_ideal(ring_qq3, ["x^2", "y^2", "z^2"]))


def test_double_link_agrees_with_explicit_links(ideal_ex22):
    reduced, (seq_a, seq_b) = monomial_double_link(ideal_ex22)
    first = link(ideal_ex22, seq_a)
    second = link(first.target, seq_b)
    assert second.target == reduced


def test_scan_fixture_not_licci(ideal_ex22, ring_qq3):
    scan = monomial_licci_scan(ideal_ex22)
    assert scan.verdict == "not-licci"
    assert scan.fixpoint_sharp == parse_ideal(ring_qq3,
                                              ["x*z", "y^4*z", "x*y^4"])
    assert scan.fixpoint_sharp_height == 2
    assert len(scan.trace) == 1


def test_scan_immediate_ci(ring_qq3):
    scan = monomial_licci_scan(parse_ideal(ring_qq3, ["x^2", "y^3", "z^4"]))
    assert scan.verdict == "reduced-to-CI"


def test_scan_inconclusive_but_directly_linked(ring_qq3):
    I = parse_ideal(ring_qq3, ["x^2", "x*y", "y^2", "z"])
    scan = monomial_licci_scan(I)
    assert scan.verdict == "inconclusive"
    assert scan.fixpoint_sharp_height == 1
    # brute force: one explicit link reaches a complete intersection
    cert = is_regular_sequence([ring_qq3.parse(s)
                                for s in ("x^2", "y^2", "z")])
    step = link(I, cert)
    assert is_complete_intersection(step.target)


# ---------------------------------------------------------------------------
# chains

def test_chain_replay_all_minimal(ideal_ex23, ring_qq3):
    chain = chain_verify(ideal_ex23,
                         [[ring_qq3.parse(s) for s in step]
                          for step in EX23_STEPS])
    assert chain.all_minimal() and chain.all_back_verified()
    assert chain.terminal_is_ci
    for step, target in zip(chain.steps, EX23_TARGETS):
        assert step.target == parse_ideal(ring_qq3, target)
    assert chain.terminal == parse_ideal(ring_qq3, ["y", "z", "x^3"])


def test_chain_replay_first_step_not_minimal(ideal_thm24, ring_qq3):
    chain = chain_verify(ideal_thm24,
                         [[ring_qq3.parse(s) for s in step]
                          for step in THM24_STEPS])
    flags = [s.minimal for s in chain.steps]
    assert flags[0] is False and all(flags[1:])
    assert chain.terminal_is_ci
    for step, target in zip(chain.steps, THM24_TARGETS):
        assert step.target == parse_ideal(ring_qq3, target)
    assert chain.steps[0].degrees() == (3, 4, 6)
    assert chain.steps[0].minimal_degrees == (3, 3, 6)


def test_chain_with_random_step(ideal_ex23):
    chain = chain_verify(ideal_ex23, [(3, 4, 6)], seeds=[11])
    assert chain.steps[0].minimal


def test_degenerate_chain_rejected(ring_qq3):
    x, y, z = ring_qq3.gens()
    ci = Ideal([x, y, z])
    with pytest.raises(LinkError):
        chain_verify(ci, [[x, y, z]])


# ---------------------------------------------------------------------------
# socle degree bound

def test_socle_bound_on_fixture(ideal_ex23):
    check = socle_degree_bound_check(ideal_ex23, (3, 4, 6))
    assert check.passes and check.degree_sum == 13 and check.bound == 9
    assert check.margin == 4 and check.strict_required


def test_socle_bound_equality_for_ci(ring_qq3):
    x, y, z = ring_qq3.gens()
    check = socle_degree_bound_check(Ideal([x, y, z]), (1, 1, 1))
    assert check.passes and check.margin == 0 and not check.strict_required


def test_socle_bound_violation_certifies_impossibility(ideal_thm24):
    # degrees (3,3,3) sum to 9 = the last twist, and the ideal is not a
    # complete intersection, so strictness fails
    check = socle_degree_bound_check(ideal_thm24, (3, 3, 3))
    assert not check.passes and check.margin == 0


def test_socle_bound_needs_cm(ring_qq3):
    x, y, z = ring_qq3.gens()
    with pytest.raises(ValueError):
        socle_degree_bound_check(Ideal([x * x, x * y]), (2, 2))


def test_remark_bound_on_random_artinian_ideals(ring_qq3):
    rng = seeded_rng("socle-random")
    for _ in range(15):
        I = random_mprimary_monomial(ring_qq3, rng)
        sf = standard_form(I)
        degrees = tuple(sorted(sf.pure_powers))
        check = socle_degree_bound_check(I, degrees)
        assert check.passes
