import pytest

from xmodkit.errors import GroupError
from xmodkit.groups import cyclic_group, direct_product, hom, symmetric_group
from xmodkit.actions import semidirect_product, trivial_action
from xmodkit.xmod import (
    conjugation_xmod, identity_morphism, module_xmod, xmod_from_normal_subgroup,
)
from xmodkit.corpus import (
    no_section_fixture, projective_section_corpus, pullback_no_section_fixture,
    pullback_section_corpus,
)
from xmodkit.lifting import (
    FreeXModMorphism, find_xmod_section, free_universal_morphism,
    hom_bijection_check, inclusion_extension, inclusion_xmod,
    projective_section, pullback_section,
)
from xmodkit.words import FactorSignature, single

S3 = symmetric_group(3)
Z2 = cyclic_group(2)
Z4 = cyclic_group(4)

PROJ_EQ_KEYS = (
    "coequalizer-formula", "lifting-over-fG", "equivariant-section-of-fT",
    "section-of-fG", "boundary-square", "equivariance-elementwise",
    "ternary-equivariance",
)
PULL_EQ_KEYS = (
    "induced-cokernel-map", "comparison-surjective", "section-of-cokernel-map",
    "pullback-factorization", "section-of-fG", "section-of-fT",
    "boundary-square", "equivariance-elementwise",
)


def a3_inclusion():
    return xmod_from_normal_subgroup(
        S3, {0, S3.index_of("(1 2 3)"), S3.index_of("(1 3 2)")})


def test_inclusion_round_trip():
    xm = a3_inclusion()
    ext = inclusion_extension(xm)
    back = inclusion_xmod(ext)
    assert back.domain() is xm.domain()
    assert back.codomain() is xm.codomain()
    assert back.boundary.table == xm.boundary.table
    assert back.action.table == xm.action.table


def test_inclusion_extension_refusals():
    # zero boundary is not injective
    with pytest.raises(GroupError):
        inclusion_extension(module_xmod(trivial_action(Z2, Z2)))
    # Z2 inside Z4: the cokernel projection has no splitting
    with pytest.raises(GroupError, match="does not split"):
        inclusion_extension(xmod_from_normal_subgroup(Z4, {0, 2}))


def test_projective_corpus_certificates():
    pairs = projective_section_corpus()
    assert len(pairs) == 24
    for mor, ext in pairs:
        cert = projective_section(mor, ext)
        assert cert.ok
        assert cert.status == "success"
        assert tuple(cert.equations) == PROJ_EQ_KEYS
        assert all(cert.equations.values())
        assert cert.detail["base_lifts"] == 1
        sec = cert.section
        # genuine section on both levels
        n, m = mor.tgt.domain().order, mor.tgt.codomain().order
        assert tuple(mor.fT.table[sec.fT.table[p]] for p in range(n)) == tuple(range(n))
        assert tuple(mor.fG.table[sec.fG.table[q]] for q in range(m)) == tuple(range(m))


def test_projective_identity_ternary_depths():
    xm = a3_inclusion()
    ext = inclusion_extension(xm)
    c8 = projective_section(identity_morphism(xm), ext)
    assert c8.detail == {"base_lifts": 1, "ternary_len": 8,
                         "ternary_words": 1, "ternary_brackets": 2}
    c10 = projective_section(identity_morphism(xm), ext, ternary_len=10)
    assert c10.ok
    assert c10.detail["ternary_words"] == 601
    assert c10.detail["ternary_brackets"] == 2


def test_no_section_fixture_proven():
    mor, ext = no_section_fixture()
    cert = projective_section(mor, ext)
    assert cert.status == "no-equivariant-section"
    assert not cert.ok
    assert cert.section is None
    assert cert.detail == {"base_lifts": 2}
    rep = cert.to_json()
    assert rep["status"] == "no-equivariant-section" and rep["ok"] is False
    # the generic fiber search agrees that no section exists at all
    assert find_xmod_section(mor) is None


def test_generic_search_finds_corpus_sections():
    found = 0
    for mor, ext in projective_section_corpus()[:6]:
        sec = find_xmod_section(mor)
        assert sec is not None
        n = mor.tgt.domain().order
        assert tuple(mor.fT.table[sec.fT.table[p]] for p in range(n)) == tuple(range(n))
        found += 1
    assert found == 6


def test_projective_section_precondition_errors():
    xm = a3_inclusion()
    ext = inclusion_extension(xm)
    other = conjugation_xmod(S3)
    with pytest.raises(GroupError):
        projective_section(identity_morphism(other), ext)
    # non-surjective carrier level is refused
    sub = xmod_from_normal_subgroup(S3, {0})
    from xmodkit.groups import GroupHom
    from xmodkit.xmod import XModMorphism
    inc = XModMorphism(sub, xm,
                       GroupHom(sub.domain(), xm.domain(), (0,)),
                       GroupHom(sub.codomain(), xm.codomain(),
                                tuple(range(6))))
    with pytest.raises(GroupError, match="surjective"):
        projective_section(inc, ext)


def test_pullback_corpus_certificates():
    mors = pullback_section_corpus()
    assert len(mors) == 12
    for mor in mors:
        cert = pullback_section(mor)
        assert cert.ok and cert.status == "success"
        assert tuple(cert.equations) == PULL_EQ_KEYS
        assert cert.equations["comparison-surjective"]
        sec = cert.section
        n, m = mor.tgt.domain().order, mor.tgt.codomain().order
        assert tuple(mor.fT.table[sec.fT.table[p]] for p in range(n)) == tuple(range(n))
        assert tuple(mor.fG.table[sec.fG.table[q]] for q in range(m)) == tuple(range(m))


def test_pullback_fixture_proven():
    cert = pullback_section(pullback_no_section_fixture())
    assert cert.status == "no-cokernel-section"
    assert cert.equations == {"induced-cokernel-map": True,
                              "comparison-surjective": True}
    assert cert.detail == {"cokernel_sections": 0}


def test_pullback_rejects_non_inclusions():
    with pytest.raises(GroupError):
        pullback_section(identity_morphism(module_xmod(trivial_action(Z2, Z2))))


def test_free_morphism_values():
    xm = conjugation_xmod(S3)
    inv = S3.index_of("(1 2)")
    f = hom(Z2, S3, {1: inv})
    g = hom(Z2, S3, {1: inv})
    mor = free_universal_morphism(Z2, xm, f, g)
    sig = FactorSignature((Z2, Z2))
    # base-slot conjugate of a carrier letter evaluates through the action
    for h in range(2):
        for hp in range(2):
            w = single(sig, 0, h) * single(sig, 1, hp) * single(sig, 0, h).inverse()
            assert mor.carrier_value(w) == xm.action.apply(g.table[h], f.table[hp])
    rep = mor.verify(6)
    assert rep == {"max_len": 6, "flat_words": 6, "square_violations": [],
                   "unit_ok": True, "equivariance_pairs": 6,
                   "equivariance_violations": [], "ok": True}
    assert mor.letter_pair() == (f.table, g.table)


def test_free_morphism_rejections():
    xm = conjugation_xmod(S3)
    inv = S3.index_of("(1 2)")
    f = hom(Z2, S3, {1: inv})
    mor = FreeXModMorphism(Z2, xm, f, f)
    sig = FactorSignature((Z2, Z2))
    with pytest.raises(GroupError, match="flat"):
        mor.carrier_value(single(sig, 0, 1))
    other = FactorSignature((Z4, Z4))
    with pytest.raises(GroupError, match="signature"):
        mor.base_value(single(other, 0, 1))
    with pytest.raises(GroupError):
        FreeXModMorphism(Z4, xm, f, f)
    g_wrong = hom(Z2, Z2, {1: 1})
    with pytest.raises(GroupError):
        FreeXModMorphism(Z2, xm, f, g_wrong)


def test_hom_bijection_frozen_counts():
    r = hom_bijection_check(Z2, conjugation_xmod(S3))
    assert r == {"pairs": 16, "round_trips": 16,
                 "distinct_evaluators": 16, "ok": True}
    from xmodkit.groups import dihedral_group
    r2 = hom_bijection_check(Z4, conjugation_xmod(dihedral_group(4)))
    assert r2["pairs"] == 64 and r2["ok"]
    v4 = direct_product(Z2, cyclic_group(2))[0]
    r3 = hom_bijection_check(v4, a3_inclusion())
    assert r3["ok"]
