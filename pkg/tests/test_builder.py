import random

import pytest

from valext.builder import (
    ExtensionScenario,
    build_general,
    build_strictly_maximal,
    prime_counts,
    render_report,
    spectrum_correspondence,
    verify_weakly_unramified,
)
from valext.errors import PreconditionError
from valext.fields import is_radicial
from valext.norms import random_fraction_element
from valext.valuations import MonomialValuation
from valext.value_groups import is_p_torsion_quotient


@pytest.fixture
def scn_qi(rationals, q_i):
    v = MonomialValuation(rationals, ["x"])
    return ExtensionScenario(valuation=v, k_len=0, kprime=q_i)


@pytest.fixture
def scn_char2(f2_a, f2_a_r):
    v = MonomialValuation(f2_a_r, ["x"])
    kprime = f2_a.extend_algebraic("s", [f2_a.gen("a"), f2_a.zero(), f2_a.one()])
    return ExtensionScenario(valuation=v, k_len=1, kprime=kprime, truncation=1)


def test_rank1_qi_instance(scn_qi, q_i):
    built = build_strictly_maximal(scn_qi)
    assert built.group_delta == built.group_gamma
    assert built.residue_field == q_i
    assert built.kprime_hom().verify()
    spec = spectrum_correspondence(built)
    assert spec.passed
    assert spec.base_count == 2 and spec.ext_count == 2
    assert all(p.strictly_maximal and p.iso_verified for p in spec.pairs)
    assert all(p.separable_over_base for p in spec.pairs)
    assert all(p.separable_over_kprime for p in spec.pairs)
    weak = verify_weakly_unramified(built, samples=60)
    assert weak.passed


def test_identity_scenario(rationals):
    v = MonomialValuation(rationals, ["x"])
    built = build_strictly_maximal(ExtensionScenario(valuation=v, k_len=0, kprime=rationals))
    assert built.valuation_w == v
    assert built.residue_field == rationals
    assert verify_weakly_unramified(built, samples=20).passed
    spec = spectrum_correspondence(built)
    assert spec.passed


def test_rank2_sqrt2_instance(rationals, q_sqrt2):
    v = MonomialValuation(rationals, ["x1", "x2"])
    built = build_strictly_maximal(ExtensionScenario(valuation=v, k_len=0, kprime=q_sqrt2))
    assert built.group_delta.rank == 2
    assert built.group_delta == built.group_gamma
    spec = spectrum_correspondence(built)
    assert spec.passed
    assert spec.base_count == 3 and spec.ext_count == 3
    # separability of every residue pair over k' (residue field of V separable over k)
    assert all(p.separable_over_kprime for p in spec.pairs)
    assert verify_weakly_unramified(built, samples=40).passed


def test_rank2_transcendental_kprime(rationals):
    v = MonomialValuation(rationals, ["x1", "x2"])
    kt = rationals.extend_transcendental("t")
    built = build_strictly_maximal(ExtensionScenario(valuation=v, k_len=0, kprime=kt))
    assert built.group_delta == built.group_gamma
    assert built.residue_field.gen_names == ("t",)
    assert built.residue_field.steps[0].minpoly is None
    weak = verify_weakly_unramified(built, samples=30)
    assert weak.passed


def test_hensel_routed_step(rationals, q_sqrt2):
    v = MonomialValuation(q_sqrt2, ["x"])
    kp = rationals.extend_algebraic("c", [-2, 0, 1])
    built = build_strictly_maximal(ExtensionScenario(valuation=v, k_len=0, kprime=kp))
    assert built.residue_field == q_sqrt2  # the image is absorbed
    assert any("factor lift" in line for line in built.provenance)
    assert built.kprime_hom().verify()
    spec = spectrum_correspondence(built)
    assert spec.passed
    # the other point gives the conjugate embedding
    built1 = build_strictly_maximal(
        ExtensionScenario(valuation=v, k_len=0, kprime=kp, point_index=1)
    )
    assert built1.kprime_images != built.kprime_images


def test_non_strictly_maximal_refuses(scn_char2):
    with pytest.raises(PreconditionError) as exc:
        build_strictly_maximal(scn_char2)
    assert "general construction" in str(exc.value)


def test_general_char2_instance(scn_char2, f2_a_r):
    built = build_general(scn_char2, 1)
    assert built.path == "general"
    assert built.group_delta.denominator == 2
    assert built.group_gamma.denominator == 1
    assert built.p_torsion_ok is True
    assert is_p_torsion_quotient(built.group_gamma, built.group_delta, 2)
    assert built.radicial_ok is True
    assert is_radicial(f2_a_r, built.residue_field, 2)
    assert prime_counts(built) == (2, 2)
    assert not built.weakly_unramified_over_input
    weak = verify_weakly_unramified(built, samples=40)
    assert weak.passed  # relative to the truncated base
    assert built.kprime_hom().verify()
    # k' image of s is the existing square root r
    assert str(dict(zip(scn_char2.kprime.gen_names, built.kprime_images))["s"]) == "r"


def test_general_rank2_variables_rooted(f2_a, f2_a_r):
    v = MonomialValuation(f2_a_r, ["x1", "x2"])
    kprime = f2_a.extend_algebraic("s", [f2_a.gen("a"), f2_a.zero(), f2_a.one()])
    scn = ExtensionScenario(valuation=v, k_len=1, kprime=kprime, truncation=1)
    built = build_general(scn, 1)
    assert built.group_delta.rank == 2 and built.group_delta.denominator == 2
    assert built.p_torsion_ok and built.radicial_ok
    assert prime_counts(built) == (3, 3)
    w = built.valuation_w
    x1 = w.function_field.gen("x1")
    assert w.value(x1).render() == "(1/2, 0)"  # x1 reread as a square root
    assert verify_weakly_unramified(built, samples=30).passed


def test_general_truncation_depth_two(f2_a, f2_a_r):
    v = MonomialValuation(f2_a_r, ["x"])
    kprime = f2_a.extend_algebraic("s", [f2_a.gen("a"), f2_a.zero(), f2_a.one()])
    scn = ExtensionScenario(valuation=v, k_len=1, kprime=kprime)
    built = build_general(scn, 2)
    assert built.group_delta.denominator == 4
    # closure chain: r gets a square root, then a fourth root
    names = built.residue_field.gen_names
    assert names[:2] == ("a", "r") and len(names) == 4
    assert built.p_torsion_ok and built.radicial_ok
    assert verify_weakly_unramified(built, samples=30).passed


def test_general_char0_delegates(scn_qi):
    built = build_general(scn_qi, 0)
    assert built.path == "strictly-maximal"


def test_general_reduced_matches_strict(f2):
    v = MonomialValuation(f2, ["x"])
    kp = f2.extend_algebraic("c", [1, 1, 1])
    scn = ExtensionScenario(valuation=v, k_len=0, kprime=kp)
    bs = build_strictly_maximal(scn)
    bg = build_general(scn, 0)
    assert bg.residue_field == bs.residue_field
    assert bg.group_delta == bs.group_delta
    assert bg.p_torsion_ok is True and bg.radicial_ok is True


def test_domination_on_samples(scn_qi):
    built = build_strictly_maximal(scn_qi)
    v = scn_qi.valuation
    w = built.valuation_w
    emb = built.base_embedding()
    rng = random.Random(0)
    for _ in range(200):
        z = random_fraction_element(v, rng)
        if z.is_zero:
            continue
        assert w.value(emb.apply(z)).coords == v.value(z).coords


def test_domination_general_path(scn_char2):
    built = build_general(scn_char2, 1)
    v = scn_char2.valuation
    w = built.valuation_w
    emb = built.base_embedding()
    rng = random.Random(1)
    for _ in range(120):
        z = random_fraction_element(v, rng)
        if z.is_zero:
            continue
        assert w.value(emb.apply(z)).coords == v.value(z).coords
    # and the maximal ideal of V lands inside the maximal ideal of W
    x = v.function_field.gen("x")
    assert w.in_maximal_ideal(emb.apply(x))


def test_point_choice_override(rationals, q_i):
    v = MonomialValuation(q_i, ["x"])
    kp = rationals.extend_algebraic("j", [1, 0, 1])
    built0 = build_strictly_maximal(ExtensionScenario(valuation=v, k_len=0, kprime=kp))
    built1 = build_strictly_maximal(
        ExtensionScenario(valuation=v, k_len=0, kprime=kp, point_index=1)
    )
    imgs = {str(built0.kprime_images[0]), str(built1.kprime_images[0])}
    assert imgs == {"i", "-i"}
    with pytest.raises(PreconditionError):
        build_strictly_maximal(
            ExtensionScenario(valuation=v, k_len=0, kprime=kp, point_index=5)
        )


def test_provenance_replay_reproduces_reports(scn_qi, scn_char2):
    a = render_report(build_strictly_maximal(scn_qi))
    b = render_report(build_strictly_maximal(scn_qi))
    assert a == b
    c = render_report(build_general(scn_char2, 1))
    d = render_report(build_general(scn_char2, 1))
    assert c == d


def test_spectrum_requires_strict_path(scn_char2):
    built = build_general(scn_char2, 1)
    with pytest.raises(PreconditionError):
        spectrum_correspondence(built)


def test_randomized_strictly_maximal_builds(rationals):
    # seeded fuzz over random irreducible k' and residue fields: every build
    # must preserve the group, verify its images, and pass the certificates
    from valext.poly import Polynomial, factor

    rng = random.Random(42)
    built_count = 0
    while built_count < 6:
        d = rng.choice([2, 2, 3])
        coeffs = [rationals.from_int(rng.randrange(-4, 5)) for _ in range(d)]
        f = Polynomial.from_coeffs(rationals, "y", coeffs + [rationals.one()])
        fac = factor(f)
        if len(fac.factors) != 1 or fac.factors[0][1] != 1:
            continue
        if rng.randrange(2):
            f_field = rationals
        else:
            f_field = rationals.extend_algebraic("d2", [-rng.choice([2, 3, 5]), 0, 1])
        kprime = rationals.extend_algebraic("g", f.univariate_coeffs())
        v = MonomialValuation(f_field, ["x"])
        built = build_strictly_maximal(ExtensionScenario(valuation=v, k_len=0, kprime=kprime))
        assert built.group_delta == built.group_gamma
        assert built.kprime_hom().verify()
        assert verify_weakly_unramified(built, samples=25).passed
        spec = spectrum_correspondence(built)
        assert spec.passed, (str(f), f_field.describe())
        built_count += 1
