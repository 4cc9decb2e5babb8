"""Valuations, their rings and residues, Krasner conditions, coarsening."""

import pytest

from hyperfields import hypersets as hs
from hyperfields.finite import (build_K, build_S, build_W, build_finite_field,
                                find_isomorphism, is_field)
from hyperfields.leading_terms import (CollapsedConstantsContext,
                                       CompositeContext, LTContext)
from hyperfields.ordgroup import ConvexSubgroup, Cut, invariance_group
from hyperfields.tropical import TropicalHyperfield
from hyperfields.valuation import (FiniteBackend, Valuation, ball_of,
                                   canonical_valuation_from_ring,
                                   check_coarsening_theorem, check_krasner,
                                   check_superiorly_canonical, coarsening,
                                   equivalent, induced_matches_valuation_ring,
                                   induced_norm_cut, induced_ring,
                                   intrinsic_valuation, is_valuation,
                                   is_valuation_hyperring, maximal_ideal,
                                   residue_embedding_check, residue_hyperfield,
                                   table_valuation, trivial_valuation,
                                   ultrametric, ultrametric_report, unit_group,
                                   valuation_ring)

import itertools


# -- the valuation axioms ---------------------------------------------------------

def test_trivial_valuation_on_finite_hyperfields():
    for F in (build_K(), build_S(), build_finite_field(5)):
        backend = FiniteBackend(F)
        rep = is_valuation(backend, trivial_valuation(backend))
        assert rep.ok, rep.failed()


def test_intrinsic_valuations_pass_everywhere():
    backends = [LTContext(2, 1), LTContext(3, 0), CompositeContext(2),
                CollapsedConstantsContext(), TropicalHyperfield(1),
                TropicalHyperfield(1, strict=True)]
    for backend in backends:
        rep = is_valuation(backend, intrinsic_valuation(backend), bound=2)
        assert rep.ok, (backend.describe(), rep.failed())


def test_broken_table_fails_both_routes_consistently():
    backend = FiniteBackend(build_finite_field(5))
    table = {0: None, 1: (0,), 2: (1,), 3: (0,), 4: (0,)}
    rep = is_valuation(backend, table_valuation(backend, table, rank=1))
    assert not rep.ok
    failed = {c.axiom for c in rep.failed()}
    assert "V2" in failed and "HH2" in failed


def test_value_map_must_send_only_zero_to_infinity():
    backend = FiniteBackend(build_S())
    table = {0: None, 1: (), 2: None}
    rep = is_valuation(backend, table_valuation(backend, table, rank=0))
    assert not rep.check("V1").passed


def test_surjectivity_observation_on_the_window():
    ctx = LTContext(2, 0)
    rep = is_valuation(ctx, intrinsic_valuation(ctx), bound=2)
    assert rep.check("surjective-on-window").passed


# -- rings ------------------------------------------------------------------------

def test_trivial_ring_is_everything():
    backend = FiniteBackend(build_S())
    v = trivial_valuation(backend)
    O = valuation_ring(backend, v)
    assert O.members() == [0, 1, 2]
    assert maximal_ideal(backend, v).members() == [0]
    assert unit_group(backend, v).members() == [1, 2]
    assert is_valuation_hyperring(backend, O)


def test_intrinsic_ring_on_leading_terms():
    ctx = LTContext(3, 1)
    v = intrinsic_valuation(ctx)
    O = valuation_ring(ctx, v)
    assert O.contains(None) and O.contains(ctx.one)
    assert O.contains(ctx.elem(2, (1, 0))) and not O.contains(ctx.elem(-1, (1, 0)))
    assert is_valuation_hyperring(ctx, O, bound=1)
    M = maximal_ideal(ctx, v)
    assert M.contains(ctx.elem(1, (2, 2))) and not M.contains(ctx.one)


def test_no_proper_valuation_hyperrings_on_small_hyperfields():
    """Exhaustive subset scan: only the whole carrier survives."""
    for F in (build_K(), build_S(), build_finite_field(5)):
        backend = FiniteBackend(F)
        rest = [x for x in range(1, F.size) if x != 1]
        good = []
        for r in range(len(rest) + 1):
            for combo in itertools.combinations(rest, r):
                O = frozenset({0, 1} | set(combo))
                pred = lambda x, O=O: x in O
                from hyperfields.valuation import RingPredicate
                if is_valuation_hyperring(backend, RingPredicate(backend, pred, "O")):
                    good.append(O)
        assert good == [frozenset(range(F.size))]


def test_canonical_valuation_from_the_full_ring():
    F = build_S()
    cosets, v = canonical_valuation_from_ring(F, {0, 1, 2})
    assert cosets == [[1, 2]]
    assert v(0) is None and v(1) == () and v(2) == ()
    rep = is_valuation(FiniteBackend(F), v)
    assert rep.ok


def test_canonical_valuation_rejects_non_rings():
    F = build_S()
    with pytest.raises(ValueError):
        canonical_valuation_from_ring(F, {0, 1})  # order not total
    with pytest.raises(ValueError):
        canonical_valuation_from_ring(build_finite_field(5), {0, 1, 4})


def test_equivalence_is_ring_equality():
    ctx = LTContext(2, 0)
    v = intrinsic_valuation(ctx)
    assert equivalent(ctx, v, coarsening(v, ConvexSubgroup(1, 1)), bound=2)
    assert not equivalent(ctx, v, trivial_valuation(ctx), bound=2)


# -- residue hyperfields -------------------------------------------------------------

def test_residue_of_leading_terms_is_the_base_field():
    for q, gamma in ((2, 0), (2, 1), (3, 0), (3, 1)):
        ctx = LTContext(q, gamma)
        R = residue_hyperfield(ctx, intrinsic_valuation(ctx), bound=1)
        assert R.size == q
        assert find_isomorphism(R, build_finite_field(q)) is not None


def test_residue_of_collapsed_constants_is_K():
    ctx = CollapsedConstantsContext()
    R = residue_hyperfield(ctx, intrinsic_valuation(ctx), bound=2)
    assert find_isomorphism(R, build_K()) is not None
    assert not is_field(R)


def test_residue_of_composite_is_F2():
    ctx = CompositeContext(2)
    R = residue_hyperfield(ctx, intrinsic_valuation(ctx), bound=1)
    assert find_isomorphism(R, build_finite_field(2)) is not None


def test_residue_of_tropical_depends_on_strictness():
    T = TropicalHyperfield(1)
    R = residue_hyperfield(T, intrinsic_valuation(T), bound=2)
    assert find_isomorphism(R, build_K()) is not None
    Ts = TropicalHyperfield(1, strict=True)
    Rs = residue_hyperfield(Ts, intrinsic_valuation(Ts), bound=2)
    assert find_isomorphism(Rs, build_finite_field(2)) is not None


def test_residue_of_trivial_valuation_is_the_hyperfield_itself():
    F = build_finite_field(5)
    backend = FiniteBackend(F)
    R = residue_hyperfield(backend, trivial_valuation(backend))
    assert find_isomorphism(R, F) is not None


def test_residue_embedding_only_at_level_zero():
    for q in (2, 3):
        assert residue_embedding_check(LTContext(q, 0))
        assert not residue_embedding_check(LTContext(q, 1))


# -- Krasner conditions ---------------------------------------------------------------

def test_leading_terms_are_krasner():
    for q, gamma in ((2, 0), (2, 1), (3, 1)):
        ctx = LTContext(q, gamma)
        rep = check_krasner(ctx, intrinsic_valuation(ctx), ctx.norm_cut(), bound=1)
        assert rep.ok, (q, gamma, rep.failed())


def test_composite_is_krasner():
    ctx = CompositeContext(2)
    rep = check_krasner(ctx, intrinsic_valuation(ctx), ctx.norm_cut(), bound=1)
    assert rep.ok, rep.failed()


def test_trivial_valuation_is_krasner_exactly_on_fields():
    for F, want in ((build_finite_field(3), True), (build_finite_field(4), True),
                    (build_K(), False), (build_S(), False)):
        backend = FiniteBackend(F)
        rep = check_krasner(backend, trivial_valuation(backend), Cut.whole(0))
        assert rep.ok == want, F.meta
        if not want:
            assert rep.check("KVH2").witness is not None


def test_strict_tropical_is_krasner_but_inclusive_is_not():
    rho = Cut.le(1, (0,))
    Ts = TropicalHyperfield(1, strict=True)
    assert check_krasner(Ts, intrinsic_valuation(Ts), rho, bound=2).ok
    T = TropicalHyperfield(1)
    rep = check_krasner(T, intrinsic_valuation(T), rho, bound=2)
    assert not rep.check("KVH2").passed


def test_collapsed_constants_fail_kvh2():
    ctx = CollapsedConstantsContext()
    rep = check_krasner(ctx, intrinsic_valuation(ctx), ctx.norm_cut(), bound=2)
    assert rep.check("KVH1").passed
    assert not rep.check("KVH2").passed


def test_krasner_preconditions():
    ctx = LTContext(2, 0)
    with pytest.raises(ValueError):
        check_krasner(ctx, trivial_valuation(ctx), ctx.norm_cut())
    with pytest.raises(ValueError):
        check_krasner(ctx, intrinsic_valuation(ctx), Cut.le(1, (-1,)))
    with pytest.raises(ValueError):
        check_krasner(ctx, intrinsic_valuation(ctx), Cut.empty(1))


# -- ultrametrics -----------------------------------------------------------------------

def test_ultrametric_distances_on_leading_terms():
    ctx = LTContext(2, 1)
    d = ultrametric(ctx, intrinsic_valuation(ctx))
    x, y = ctx.elem(0, (1, 0)), ctx.elem(0, (1, 1))
    assert d(x, x) is None
    assert d(x, y) == (1,)
    assert d(x, ctx.elem(1, (1, 0))) == (0,)
    assert d(x, None) == (0,)


def test_ultrametric_report_passes_for_krasner_structures():
    ctx = LTContext(2, 1)
    rep = ultrametric_report(ctx, intrinsic_valuation(ctx), ctx.norm_cut(), bound=1)
    assert rep.ok, rep.failed()
    for axiom in ("U1", "U2", "U3", "BALL", "BALL-CHAIN"):
        assert rep.check(axiom).passed


def test_ball_identity_fails_without_krasner():
    backend = FiniteBackend(build_K())
    rep = ultrametric_report(backend, trivial_valuation(backend), Cut.whole(0))
    assert rep.check("U1").passed and rep.check("U3").passed
    assert not rep.check("BALL").passed

    ctx = CollapsedConstantsContext()
    rep = ultrametric_report(ctx, intrinsic_valuation(ctx), ctx.norm_cut(), bound=2)
    assert not rep.check("BALL").passed


def test_ball_membership_is_a_strict_radius():
    ctx = LTContext(2, 0)
    d = ultrametric(ctx, intrinsic_valuation(ctx))
    ball = ball_of(ctx, d, ctx.one, Cut.le(1, (0,)))
    assert ball(ctx.one)
    assert ball(ctx.elem(1, (1,))) is False  # distance 0, not above the cut
    assert ball(None) is False


def test_ultrametric_requires_the_intrinsic_valuation():
    ctx = LTContext(2, 0)
    with pytest.raises(ValueError):
        ultrametric(ctx, trivial_valuation(ctx))


# -- superior canonicity ----------------------------------------------------------------

def test_leading_terms_are_superiorly_canonical():
    for backend in (LTContext(2, 1), LTContext(3, 0), CompositeContext(2),
                    TropicalHyperfield(1, strict=True)):
        rep = check_superiorly_canonical(backend, bound=1)
        assert rep.ok, (backend.describe(), rep.failed())


def test_sch1_fails_for_inclusive_tropical_and_sign_structures():
    rep = check_superiorly_canonical(TropicalHyperfield(1), bound=2)
    assert not rep.check("SCH1").passed
    assert rep.check("SCH1").witness is not None
    for F in (build_K(), build_S(), build_W()):
        rep = check_superiorly_canonical(FiniteBackend(F))
        assert not rep.check("SCH1").passed, F.meta


def test_fields_are_superiorly_canonical():
    rep = check_superiorly_canonical(FiniteBackend(build_finite_field(4)))
    assert rep.ok, rep.failed()


# -- induced ring and coarsening -----------------------------------------------------------

def test_induced_ring_of_leading_terms_is_the_valuation_ring():
    for ctx in (LTContext(2, 0), LTContext(2, 1), LTContext(3, 1)):
        assert induced_matches_valuation_ring(ctx, intrinsic_valuation(ctx), bound=2)
        assert induced_norm_cut(ctx) == ctx.norm_cut()


def test_induced_norm_needs_full_cancellation():
    with pytest.raises(ValueError):
        induced_norm_cut(FiniteBackend(build_finite_field(3)))


def test_coarsening_projects_the_value():
    ctx = CompositeContext(2)
    v = intrinsic_valuation(ctx)
    u = coarsening(v, ConvexSubgroup(2, 1))
    assert u.rank == 1
    x = ctx.elem(0, "1/2")
    assert v(x) == (0, -1) and u(x) == (0,)
    assert not v.ge_zero(x) and u.ge_zero(x)
    with pytest.raises(ValueError):
        coarsening(v, ConvexSubgroup(1, 1))


def test_composite_coarsening_theorem():
    ctx = CompositeContext(2)
    v = intrinsic_valuation(ctx)
    rho = ctx.norm_cut()
    delta = invariance_group(rho)
    assert delta == ConvexSubgroup(2, 1)
    u = coarsening(v, delta)
    assert not equivalent(ctx, v, u, bound=2)
    assert check_coarsening_theorem(ctx, v, rho, bound=2)
    # O_v sits strictly inside O_u; the induced ring recovers O_u, not O_v
    assert not induced_matches_valuation_ring(ctx, v, bound=2)


def test_kgamma_coarsening_theorem_is_the_identity_case():
    for gamma in (0, 1):
        ctx = LTContext(3, gamma)
        v = intrinsic_valuation(ctx)
        rho = ctx.norm_cut()
        assert invariance_group(rho) == ConvexSubgroup(1, 1)
        assert check_coarsening_theorem(ctx, v, rho, bound=2)
