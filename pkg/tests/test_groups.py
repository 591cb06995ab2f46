import pytest

from xmodkit.errors import BudgetExhausted, GroupError
from xmodkit.groups import (
    FiniteGroup, GroupHom, alternating_group, compose, cyclic_group,
    dihedral_group, direct_product, enumerate_homs, find_isomorphism,
    find_retraction, find_section, generating_sequence, hom, identity_hom,
    image, is_normal, is_z4_module, kernel, klein_four_group, normal_closure,
    normal_subgroups, normality_witness, pullback, quaternion_group, quotient,
    search_homs, subgroup, symmetric_group, trivial_group, trivial_hom,
    z4_module, z4_module_classes,
)


def test_cyclic_arithmetic():
    Z6 = cyclic_group(6)
    assert Z6.identity == 0
    assert Z6.mul(4, 5) == 3
    assert Z6.inv(1) == 5
    assert Z6.power(1, 10) == 4
    assert Z6.power(1, -1) == 5
    assert Z6.elem_orders == (1, 6, 3, 2, 3, 6)
    assert Z6.exponent == 6
    assert Z6.commutative


def test_stock_group_profiles():
    # (group, order, commutative, sorted element orders)
    cases = [
        (trivial_group(), 1, True, [1]),
        (klein_four_group(), 4, True, [1, 2, 2, 2]),
        (quaternion_group(), 8, False, [1, 2, 4, 4, 4, 4, 4, 4]),
        (dihedral_group(4), 8, False, [1, 2, 2, 2, 2, 2, 4, 4]),
        (symmetric_group(3), 6, False, [1, 2, 2, 2, 3, 3]),
        (alternating_group(4), 12, False, [1, 2, 2, 2, 3, 3, 3, 3, 3, 3, 3, 3]),
    ]
    for G, order, comm, orders in cases:
        assert G.order == order
        assert G.commutative == comm
        assert sorted(G.elem_orders) == orders


def test_symmetric_group_names():
    S3 = symmetric_group(3)
    assert S3.names[0] == "e"
    assert S3.index_of("(1 2 3)") == 3
    assert S3.conj(S3.index_of("(1 2)"), S3.index_of("(1 2 3)")) == S3.index_of("(1 3 2)")


def test_table_validation():
    with pytest.raises(GroupError):
        FiniteGroup(((0, 0), (0, 0)))  # no identity
    with pytest.raises(GroupError):
        FiniteGroup(((0, 1), (1, 1)))  # 1 has no inverse
    # smallest nonassociative loop: identity and inverses exist, law fails
    loop = (
        (0, 1, 2, 3, 4),
        (1, 0, 3, 4, 2),
        (2, 4, 0, 1, 3),
        (3, 2, 4, 0, 1),
        (4, 3, 1, 2, 0),
    )
    with pytest.raises(GroupError):
        FiniteGroup(loop)


def test_order_cap():
    with pytest.raises(GroupError):
        cyclic_group(1025)


def test_generating_sequence_greedy():
    S4 = symmetric_group(4)
    gens = S4.generators
    assert [S4.elem_orders[g] for g in gens] == [4, 4]
    assert len(S4.closure(gens)) == 24
    # deterministic: the same call gives the same tuple
    assert gens == generating_sequence(S4, (S4.identity,))


def test_hom_validation_and_composition():
    Z4 = cyclic_group(4)
    Z2 = cyclic_group(2)
    f = GroupHom(Z4, Z2, (0, 1, 0, 1))
    assert f(3) == 1
    with pytest.raises(GroupError):
        GroupHom(Z4, Z2, (0, 1, 1, 0))
    g = hom(Z2, Z4, {1: 2})
    assert g.table == (0, 2)
    assert compose(f, g).table == (0, 0)
    assert identity_hom(Z4).table == (0, 1, 2, 3)
    assert trivial_hom(Z4, Z2).table == (0, 0, 0, 0)
    with pytest.raises(GroupError):
        hom(Z2, Z4, {1: 1})  # order 4 image of an involution
    with pytest.raises(GroupError):
        hom(Z4, Z4, {2: 1})  # 2 does not generate Z4


def test_kernel_image_subgroup():
    S3 = symmetric_group(3)
    Z2 = cyclic_group(2)
    sign = GroupHom(S3, Z2, tuple(0 if S3.elem_orders[x] in (1, 3) else 1
                                  for x in range(6)))
    K, ki = kernel(sign)
    assert K.order == 3
    assert all(sign(ki(x)) == 0 for x in range(3))
    I, ii = image(sign)
    assert I.order == 2
    with pytest.raises(GroupError):
        subgroup(S3, [0, S3.index_of("(1 2 3)")])  # not closed


def test_normality_and_quotient():
    S4 = symmetric_group(4)
    assert sorted(len(ns) for ns in normal_subgroups(S4)) == [1, 4, 12, 24]
    A4_elems = next(ns for ns in normal_subgroups(S4) if len(ns) == 12)
    Q, proj = quotient(S4, A4_elems)
    assert Q.order == 2
    K4_elems = next(ns for ns in normal_subgroups(S4) if len(ns) == 4)
    Q2, _ = quotient(S4, K4_elems)
    assert find_isomorphism(Q2, symmetric_group(3)) is not None
    # refuse a non-normal subgroup, with a conjugation witness
    S3 = symmetric_group(3)
    two = {0, S3.index_of("(1 2)")}
    assert normality_witness(S3, two) is not None
    assert not is_normal(S3, two)
    with pytest.raises(GroupError, match="not normal"):
        quotient(S3, two)
    assert len(normal_closure(S3, two)) == 6


def test_normal_subgroup_profiles():
    assert sorted(len(ns) for ns in normal_subgroups(dihedral_group(4))) == [1, 2, 4, 4, 4, 8]
    assert sorted(len(ns) for ns in normal_subgroups(quaternion_group())) == [1, 2, 4, 4, 4, 8]
    assert sorted(len(ns) for ns in normal_subgroups(symmetric_group(3))) == [1, 3, 6]


def test_direct_product_and_pullback():
    Z2, Z3 = cyclic_group(2), cyclic_group(3)
    P, i1, i2, p1, p2 = direct_product(Z2, Z3)
    assert P.order == 6
    assert compose(p1, i1).table == identity_hom(Z2).table
    assert compose(p2, i2).table == identity_hom(Z3).table
    assert compose(p1, i2).table == trivial_hom(Z3, Z2).table
    assert find_isomorphism(cyclic_group(6), P) is not None

    Z4 = cyclic_group(4)
    f = GroupHom(Z4, Z2, (0, 1, 0, 1))
    PB, q1, q2 = pullback(f, f)
    assert PB.order == 8
    assert all(f(q1(x)) == f(q2(x)) for x in range(8))


def test_hom_counts():
    Z2, Z3, Z4, Z6 = (cyclic_group(n) for n in (2, 3, 4, 6))
    S3 = symmetric_group(3)
    Q8 = quaternion_group()
    assert len(enumerate_homs(Z2, Z4)) == 2
    assert len(enumerate_homs(Z3, Z4)) == 1
    assert len(enumerate_homs(Z4, Z4)) == 4
    assert len(enumerate_homs(Z6, Z4)) == 2
    assert len(enumerate_homs(S3, Z6)) == 2
    assert len(enumerate_homs(Q8, Z2)) == 4
    assert len(enumerate_homs(S3, S3)) == 10
    assert len(enumerate_homs(Q8, Q8)) == 28


def test_aut_counts():
    S3 = symmetric_group(3)
    K4 = klein_four_group()
    assert sum(1 for f in enumerate_homs(S3, S3) if f.is_injective()) == 6
    assert sum(1 for f in enumerate_homs(K4, K4) if f.is_injective()) == 6
    assert sum(1 for f in enumerate_homs(cyclic_group(4), cyclic_group(4))
               if f.is_injective()) == 2


def test_isomorphism_search():
    assert find_isomorphism(dihedral_group(3), symmetric_group(3)) is not None
    assert find_isomorphism(dihedral_group(4), quaternion_group()) is None
    assert find_isomorphism(cyclic_group(4), klein_four_group()) is None
    iso = find_isomorphism(symmetric_group(3), dihedral_group(3))
    assert iso.is_injective() and iso.is_surjective()


def test_search_budget():
    Z4 = cyclic_group(4)
    with pytest.raises(BudgetExhausted):
        list(search_homs(Z4, Z4.mul, 0, lambda g: list(range(4)), budget=1))


def test_search_prescribed():
    Z4 = cyclic_group(4)
    # fixing the image of 2 to 0 leaves exactly the two even-image homs
    homs = list(search_homs(Z4, Z4.mul, 0, lambda g: list(range(4)),
                            prescribed={2: 0}))
    assert [phi[1] for phi in homs] == [0, 2]
    # contradictory prescription yields nothing
    assert list(search_homs(Z4, Z4.mul, 0, lambda g: list(range(4)),
                            prescribed={2: 1})) == []


def test_find_section():
    Z4, Z2 = cyclic_group(4), cyclic_group(2)
    mod2 = GroupHom(Z4, Z2, (0, 1, 0, 1))
    assert find_section(mod2) is None  # Z4 -> Z2 does not split
    D4 = dihedral_group(4)
    rotations = D4.closure([next(y for y in range(8) if D4.elem_orders[y] == 4)])
    rot = GroupHom(D4, Z2, tuple(0 if x in rotations else 1 for x in range(8)))
    s = find_section(rot)
    assert s is not None
    assert all(rot(s(q)) == q for q in range(2))
    # not surjective: no section
    assert find_section(trivial_hom(Z2, Z4)) is None


def test_find_retraction():
    Z4, Z2 = cyclic_group(4), cyclic_group(2)
    double = hom(Z2, Z4, {1: 2})
    assert find_retraction(double) is None  # 2 generates no complement
    K4 = klein_four_group()
    inc = hom(Z2, K4, {1: 1})
    r = find_retraction(inc)
    assert r is not None
    assert all(r(inc(t)) == t for t in range(2))
    assert find_retraction(trivial_hom(Z4, Z2)) is None  # not injective


def test_z4_modules():
    M = z4_module(1, 1)
    assert M.order == 8
    assert M.names == ("00", "01", "10", "11", "20", "21", "30", "31")
    assert M.mul(M.index_of("31"), M.index_of("11")) == M.index_of("00")
    assert is_z4_module(M)
    assert is_z4_module(klein_four_group())
    assert is_z4_module(trivial_group())
    assert not is_z4_module(cyclic_group(3))
    assert not is_z4_module(symmetric_group(3))
    assert not is_z4_module(cyclic_group(8))
    assert len(z4_module_classes(64)) == 16
    assert z4_module_classes(4) == [(0, 0), (0, 1), (0, 2), (1, 0)]
