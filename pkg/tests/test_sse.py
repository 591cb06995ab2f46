import pytest

from xmodkit.errors import BudgetExhausted, GroupError
from xmodkit.groups import (
    GroupHom, cyclic_group, hom, normal_subgroups, symmetric_group,
    trivial_group, trivial_hom, z4_module,
)
from xmodkit.actions import trivial_action
from xmodkit.xmod import (
    CrossedModule, conjugation_xmod, xmod_from_normal_subgroup,
)
from xmodkit.sse import (
    FreeSSE, SSEMorphism, brute_force_section, compose_sse,
    enumerate_sse_morphisms, free_cover, identity_sse, is_projective_rel,
    is_regular_epi, lift_along, total_map,
)

Z2 = cyclic_group(2)
Z4 = cyclic_group(4)
S3 = symmetric_group(3)
ONE = trivial_group()


def over_point(M):
    """Crossed module with trivial base: a bare commutative group."""
    return CrossedModule(trivial_action(ONE, M), trivial_hom(M, ONE))


MZ4 = over_point(Z4)
MZ2 = over_point(Z2)
MK4 = over_point(z4_module(0, 2))


def mod2_epi():
    return SSEMorphism(MZ4, MZ2, GroupHom(Z4, Z2, (0, 1, 0, 1)))


def k4_epi():
    K4 = MK4.domain()
    return SSEMorphism(MK4, MZ2,
                       GroupHom(K4, Z2, tuple(int(K4.names[x][0])
                                              for x in range(4))))


def test_sse_morphism_validation():
    m = mod2_epi()
    assert m(3) == 1
    assert m.base is ONE
    # wrong base
    nx = xmod_from_normal_subgroup(
        S3, next(ns for ns in normal_subgroups(S3) if len(ns) == 3))
    with pytest.raises(GroupError):
        SSEMorphism(nx, MZ2, trivial_hom(nx.domain(), Z2))
    # non-equivariant carrier map over S3: collapse A3 inside the conjugation
    cx = conjugation_xmod(S3)
    with pytest.raises(GroupError):
        SSEMorphism(cx, cx, trivial_hom(S3, S3))


def test_enumerate_sse_morphisms():
    nx = xmod_from_normal_subgroup(
        S3, next(ns for ns in normal_subgroups(S3) if len(ns) == 3))
    cx = conjugation_xmod(S3)
    ms = enumerate_sse_morphisms(nx, cx)
    assert len(ms) == 1  # only the inclusion survives over the fixed base
    assert ms[0].fT.is_injective()
    assert len(enumerate_sse_morphisms(MZ4, MZ2)) == 2
    with pytest.raises(GroupError):
        enumerate_sse_morphisms(nx, MZ2)


def test_identity_and_composition():
    i = identity_sse(MZ4)
    m = mod2_epi()
    c = compose_sse(m, i)
    assert c.fT.table == m.fT.table
    with pytest.raises(GroupError):
        compose_sse(m, m)


def test_regular_epi_and_total_map():
    assert is_regular_epi(mod2_epi())
    assert is_regular_epi(k4_epi())
    dbl = SSEMorphism(MZ2, MZ4, hom(Z2, Z4, {1: 2}))
    assert not is_regular_epi(dbl)
    tm = total_map(mod2_epi())
    assert tm.is_surjective()
    assert tm.source.order == 4 and tm.target.order == 2


def test_section_search_outcomes():
    # Z4 -> Z2 has no multiplicative section at all: proven None
    assert brute_force_section(mod2_epi()) is None
    # K4 -> Z2 splits
    sec = brute_force_section(k4_epi())
    assert sec is not None
    assert all(k4_epi().fT.table[sec.fT.table[t]] == t for t in range(2))
    # budget exhaustion is an error, not a verdict
    with pytest.raises(BudgetExhausted):
        brute_force_section(mod2_epi(), budget=0)
    with pytest.raises(GroupError):
        brute_force_section(SSEMorphism(MZ2, MZ4, hom(Z2, Z4, {1: 2})))


def test_section_respects_the_action():
    # over S3: conjugation xmod covered by itself has the identity section
    cx = conjugation_xmod(S3)
    ident = identity_sse(cx)
    assert is_regular_epi(ident)
    sec = brute_force_section(ident)
    assert sec is not None and sec.fT.table == tuple(range(6))


def test_lift_along():
    epi = mod2_epi()
    # lift the identity on Z2: must fail (that would split the epi)
    ms = enumerate_sse_morphisms(MZ2, MZ2)
    ident = next(m for m in ms if m.fT.table == (0, 1))
    assert lift_along(epi, ident) is None
    # the trivial morphism always lifts
    triv = next(m for m in ms if m.fT.table == (0, 0))
    v = lift_along(epi, triv)
    assert v is not None and set(v.fT.table) <= {0, 2}
    with pytest.raises(GroupError):
        lift_along(epi, identity_sse(MZ4))  # lands in the wrong object


def test_projectivity_reports():
    assert is_projective_rel(MZ4, [mod2_epi()])["ok"]
    rep = is_projective_rel(MZ2, [mod2_epi()])
    assert not rep["ok"]
    assert rep["failed_epi"] == 0 and rep["failed_morphism"] == 1
    rep2 = is_projective_rel(MK4, [k4_epi()])
    assert rep2["ok"]
    with pytest.raises(GroupError):
        is_projective_rel(MZ2, [SSEMorphism(MZ2, MZ4, hom(Z2, Z4, {1: 2}))])


def test_free_cover_certificates():
    for xm, rank, nker in ((MZ2, 1, 1), (MZ4, 1, 0), (MK4, 2, 2)):
        fc = free_cover(xm)
        cert = fc.certificate()
        assert cert["ok"]
        assert cert["rank"] == rank
        assert cert["kernel_witnesses"] == nker
        assert is_regular_epi(fc.cover)
        # the boundary of the free object is the composite through the cover
        F = fc.free
        assert all(F.boundary.table[r] ==
                   xm.boundary.table[fc.cover.fT.table[r]]
                   for r in range(F.domain().order))
    assert free_cover(MK4).basis_names == ("10", "01")


def test_free_cover_is_projective():
    fc = free_cover(MZ2)
    rep = is_projective_rel(fc.free, [mod2_epi(), k4_epi()])
    assert rep["ok"]


def test_free_cover_refusals():
    with pytest.raises(GroupError):
        free_cover(conjugation_xmod(S3))  # nonabelian carrier
    with pytest.raises(GroupError):
        free_cover(over_point(cyclic_group(3)))  # exponent 3
