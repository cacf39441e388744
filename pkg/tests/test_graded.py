import pytest

from gcmwb import (HorizonError, colength, filter_regular_initial_form,
                   hilbert_g, invariant_ia, mumford_gap_check, parameter_ideal,
                   plus_torsion_length, postulation, postulation_bound,
                   regularity_bound, regularity_g, reltype_bound,
                   validate_parameter_system)
from gcmwb.graded import filter_regular_component
from tests.conftest import example_family_ring


@pytest.fixture(scope="module")
def e3_q(example_ring):
    return validate_parameter_system(example_ring, [example_ring.ring.var("y")])


@pytest.fixture(scope="module")
def e3_ia(example_ring, e3_q):
    return invariant_ia(example_ring, e3_q)


@pytest.fixture(scope="module")
def planes_ia(two_planes, two_planes_base_q):
    return invariant_ia(two_planes, two_planes_base_q)


def test_bound_formulas():
    assert regularity_bound(3, 1) == 2
    assert regularity_bound(0, 1) == 0
    assert regularity_bound(1, 2) == 2          # (4*1)^1 - 1 - 1
    assert regularity_bound(2, 3) == 8**2 - 3   # (4*2)^2 - 2 - 1
    assert postulation_bound(3, 1) == 3
    assert postulation_bound(0, 1) == 1
    assert reltype_bound(1, 2) == 3


def test_hilbert_g_example(example_ring, e3_q):
    values = [hilbert_g(example_ring, e3_q, n) for n in range(6)]
    assert values == [2, 2, 2, 1, 1, 1]


def test_hilbert_g_regular(regular_plane):
    R = regular_plane.ring
    Q = validate_parameter_system(regular_plane, [R.var("x"), R.var("y")])
    assert [hilbert_g(regular_plane, Q, n) for n in range(4)] == [1, 2, 3, 4]


def test_hilbert_g_cm_closed_form(regular_plane):
    """Over a CM ring the graded ring is a polynomial ring over A/Q."""
    R = regular_plane.ring
    Q = validate_parameter_system(regular_plane, [R.poly("x^2"), R.var("y")])
    ell = colength(regular_plane, parameter_ideal(regular_plane, Q))
    for n in range(4):
        assert hilbert_g(regular_plane, Q, n) == (n + 1) * ell


def test_hilbert_sum_telescopes(example_ring, e3_q):
    for n in range(5):
        total = sum(hilbert_g(example_ring, e3_q, i) for i in range(n + 1))
        assert total == colength(example_ring,
                                 parameter_ideal(example_ring, e3_q, n + 1))


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_postulation_family(r):
    A = example_family_ring(r)
    Q = validate_parameter_system(A, [A.ring.var("y")])
    ia = invariant_ia(A, Q, n_max=r + 3)
    fit = postulation(A, Q, ia)
    assert fit.postulation == r
    assert fit.eval(r) == 1 and fit.eval(r + 5) == 1  # constant polynomial 1
    assert fit.values[r - 1] == 2  # disagreement right below p(Q)


def test_postulation_cm_is_zero(regular_plane):
    R = regular_plane.ring
    Q = validate_parameter_system(regular_plane, [R.var("x"), R.var("y")])
    ia = invariant_ia(regular_plane, Q)
    assert postulation(regular_plane, Q, ia).postulation == 0


def test_postulation_two_planes(two_planes, two_planes_base_q, planes_ia):
    fit = postulation(two_planes, two_planes_base_q, planes_ia)
    assert fit.postulation <= postulation_bound(planes_ia.value, 2) == 3
    # h(n) = 2n + 3 for this instance
    assert list(fit.values[:4]) == [3, 5, 7, 9]


def test_postulation_needs_certified_horizon(non_gcm_ring):
    R = non_gcm_ring.ring
    Q = validate_parameter_system(non_gcm_ring, [R.poly("x - y"), R.var("z")])
    with pytest.raises(HorizonError):
        postulation(non_gcm_ring, Q, ia=None)


@pytest.mark.parametrize("r", [1, 3, 4])
def test_torsion_components_family(r):
    """Torsion sits exactly in degrees 0..r-1, each of length one."""
    A = example_family_ring(r)
    Q = validate_parameter_system(A, [A.ring.var("y")])
    bound = regularity_bound(r, 1)
    tors = [plus_torsion_length(A, Q, (), n, bound=bound)
            for n in range(r + 2)]
    assert tors == [1] * r + [0, 0]


def test_torsion_cm_vanishes(regular_plane):
    R = regular_plane.ring
    Q = validate_parameter_system(regular_plane, [R.var("x"), R.var("y")])
    for n in range(3):
        assert plus_torsion_length(regular_plane, Q, (), n, bound=0) == 0


def test_torsion_full_prefix_concentrates_in_degree_zero(example_ring, e3_q):
    bound = 2
    vals = [plus_torsion_length(example_ring, e3_q, e3_q.elements, n,
                                bound=bound) for n in range(3)]
    assert vals[0] == 2  # length of A/(y) + torsion x-class
    assert vals[1:] == [0, 0]


def test_filter_regular_example(example_ring, e3_q, e3_ia):
    z, cert = filter_regular_initial_form(example_ring, e3_q, seed=0,
                                          ia=e3_ia)
    assert z == example_ring.ring.var("y")  # the parameter itself works
    assert cert.attempts == 1
    # (0 : y*)_n vanishes for n >= r = 3; the single-step colon picks up
    # only the top torsion class x*y^(r-1), in degree r-1
    for n in (3, 4, 5):
        assert filter_regular_component(example_ring, e3_q, (), z, n) == 0
    assert filter_regular_component(example_ring, e3_q, (), z, 2) == 1
    assert filter_regular_component(example_ring, e3_q, (), z, 0) == 0


def test_filter_regular_reproducible(two_planes, two_planes_base_q, planes_ia):
    z1, c1 = filter_regular_initial_form(two_planes, two_planes_base_q,
                                         seed=5, ia=planes_ia)
    z2, c2 = filter_regular_initial_form(two_planes, two_planes_base_q,
                                         seed=5, ia=planes_ia)
    assert z1 == z2 and c1.window == c2.window


@pytest.mark.parametrize("r", [1, 2, 3, 4, 6])
def test_regularity_family_exact(r):
    A = example_family_ring(r)
    Q = validate_parameter_system(A, [A.ring.var("y")])
    ia = invariant_ia(A, Q, n_max=r + 3)
    cert = regularity_g(A, Q, ia)
    assert cert.value == r - 1
    assert cert.stage_ends[0] == (r - 1 if r >= 1 else None)


def test_regularity_cm(regular_plane, regular_space):
    for A in (regular_plane, regular_space):
        R = A.ring
        Q = validate_parameter_system(A, [R.var(v) for v in R.variables])
        ia = invariant_ia(A, Q)
        assert regularity_g(A, Q, ia).value == 0


def test_regularity_needs_horizon(non_gcm_ring):
    R = non_gcm_ring.ring
    Q = validate_parameter_system(non_gcm_ring, [R.poly("x - y"), R.var("z")])
    with pytest.raises(HorizonError):
        regularity_g(non_gcm_ring, Q)


def test_regularity_two_planes(two_planes, two_planes_base_q, planes_ia):
    cert = regularity_g(two_planes, two_planes_base_q, planes_ia, seed=0)
    assert cert.value <= regularity_bound(planes_ia.value, 2) == 2


def test_postulation_consistency(two_planes, two_planes_base_q, planes_ia,
                                 example_ring, e3_q, e3_ia):
    """h(n) = p(n) for all computed n >= reg + 1."""
    for A, Q, ia in ((two_planes, two_planes_base_q, planes_ia),
                     (example_ring, e3_q, e3_ia)):
        fit = postulation(A, Q, ia)
        reg = regularity_g(A, Q, ia, seed=0).value
        for n in range(reg + 1, fit.horizon + 1):
            assert fit.values[n] == fit.eval(n)


def test_mumford_gap_check(two_planes, two_planes_base_q, planes_ia):
    entries = mumford_gap_check(two_planes, two_planes_base_q, planes_ia,
                                seed=0)
    assert entries, "gap check produced no entries"
    assert all(e.verdict == "pass" for e in entries)
    bounds = {e.bound for e in entries}
    assert bounds == {"Lemma2.4", "Thm2.2"}


def test_mumford_gated_for_curves(example_ring, e3_q, e3_ia):
    entries = mumford_gap_check(example_ring, e3_q, e3_ia)
    assert len(entries) == 1 and entries[0].verdict == "skip"
