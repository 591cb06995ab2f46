"""Crossed modules of finite groups and their component calculus.

A crossed module is an action of a group G on a group T together with a
boundary hom T -> G satisfying, elementwise,

  equivariance:  d(g.t) = g d(t) g^-1          (precrossed)
  conjugation:   (d t).t' = t t' t^-1          (Peiffer)

Both laws also have word-level forms quantified over cosmash words, checked
here by enumeration: the binary forms at modest length and a ternary form
whose two evaluation routes must agree on every ternary cosmash word.  The
ternary audit is the expensive one; its default length keeps the search
tractable while still covering every word a violation could hide in at that
scale.
"""

from .errors import GroupError
from .actions import (
    GroupAction, SplitExtension, action_core_word, conjugation_action,
    conjugation_action_on, semidirect_product, trivial_action,
)
from .groups import (
    FiniteGroup, GroupHom, compose, direct_product, enumerate_homs,
    identity_hom, kernel, normal_closure, quotient, subgroup, trivial_group,
    trivial_hom,
)
from .words import (
    FactorSignature, WordHom, enumerate_cosmash_words, fold_word, format_word,
)


class CrossedModule:
    """Action of codomain() on domain() plus a boundary hom between them."""

    def __init__(self, action: GroupAction, boundary: GroupHom, *,
                 check: bool = True, label: str = None):
        if boundary.source is not action.carrier:
            raise GroupError("boundary source must be the action carrier")
        if boundary.target is not action.actor:
            raise GroupError("boundary target must be the acting group")
        self.action = action
        self.boundary = boundary
        self.label = label or f"({action.carrier.label}->{action.actor.label})"
        self._pi0 = None
        if check:
            w = precrossed_witness(action, boundary)
            if w is not None:
                g, t = w
                raise GroupError(
                    f"equivariance fails at (g={action.actor.names[g]}, "
                    f"t={action.carrier.names[t]})")
            w = peiffer_witness(action, boundary)
            if w is not None:
                t, u = w
                raise GroupError(
                    f"Peiffer law fails at (t={action.carrier.names[t]}, "
                    f"t'={action.carrier.names[u]})")

    def domain(self) -> FiniteGroup:
        return self.action.carrier

    def codomain(self) -> FiniteGroup:
        return self.action.actor

    def __repr__(self):
        return f"<CrossedModule {self.label}>"


def precrossed_witness(action: GroupAction, boundary: GroupHom):
    """First (g, t) with d(g.t) != g d(t) g^-1, or None."""
    G = action.actor
    d = boundary.table
    for g in range(G.order):
        row = action.table[g]
        for t in range(action.carrier.order):
            if d[row[t]] != G.conj(g, d[t]):
                return (g, t)
    return None


def peiffer_witness(action: GroupAction, boundary: GroupHom):
    """First (t, t') with (d t).t' != t t' t^-1, or None."""
    T = action.carrier
    d = boundary.table
    for t in range(T.order):
        row = action.table[d[t]]
        for u in range(T.order):
            if row[u] != T.conj(t, u):
                return (t, u)
    return None


def check_axioms(xm: CrossedModule) -> dict:
    """Elementwise audit over all pairs; collects every violation."""
    action, boundary = xm.action, xm.boundary
    G, T = action.actor, action.carrier
    d = boundary.table
    pre = []
    for g in range(G.order):
        row = action.table[g]
        for t in range(T.order):
            if d[row[t]] != G.conj(g, d[t]):
                pre.append((G.names[g], T.names[t]))
    pf = []
    for t in range(T.order):
        row = action.table[d[t]]
        for u in range(T.order):
            if row[u] != T.conj(t, u):
                pf.append((T.names[t], T.names[u]))
    return {
        "equivariance_violations": pre,
        "peiffer_violations": pf,
        "pairs_checked": G.order * T.order + T.order * T.order,
        "ok": not pre and not pf,
    }


def _pullback_action(xm: CrossedModule) -> GroupAction:
    """T acting on T through the boundary: t.u = (d t).u."""
    d = xm.boundary.table
    T = xm.domain()
    return GroupAction(T, T, [xm.action.table[d[t]] for t in range(T.order)],
                       check=False)


def check_axioms_wordlevel(xm: CrossedModule, max_len: int = 4) -> dict:
    """Both laws quantified over binary cosmash words up to max_len.

    Equivariance: for w in the (G, T) cosmash, the boundary of the core
    evaluation equals the straight evaluation of w through (id, d) in G.
    Peiffer: for w in the (T, T) cosmash, core evaluation through the
    pulled-back action equals plain multiplication of the letters in T.
    """
    G, T = xm.codomain(), xm.domain()
    d = xm.boundary
    eq_viol = []
    sig_gt = FactorSignature((G, T))
    into_g = WordHom(sig_gt, (identity_hom(G), d), G)
    n_eq = 0
    for w in enumerate_cosmash_words(sig_gt, max_len):
        n_eq += 1
        core = action_core_word(xm.action, w)
        if d.table[core] != into_g.evaluate(w):
            eq_viol.append(format_word(w))
    pf_viol = []
    sig_tt = FactorSignature((T, T))
    pulled = _pullback_action(xm)
    into_t = WordHom(sig_tt, (identity_hom(T), identity_hom(T)), T)
    n_pf = 0
    for w in enumerate_cosmash_words(sig_tt, max_len):
        n_pf += 1
        if action_core_word(pulled, w) != into_t.evaluate(w):
            pf_viol.append(format_word(w))
    return {
        "max_len": max_len,
        "equivariance_words": n_eq,
        "peiffer_words": n_pf,
        "equivariance_violations": eq_viol,
        "peiffer_violations": pf_viol,
        "ok": not eq_viol and not pf_viol,
    }


def check_ternary(xm: CrossedModule, max_len: int = 8) -> dict:
    """Ternary law over (G, T, T) cosmash words.

    Route one folds the two T slots by multiplication and takes the core
    evaluation.  Route two first pushes the middle slot through the boundary
    into the actor slot, then evaluates.  Both land in T and must agree on
    every ternary cosmash word.
    """
    G, T = xm.codomain(), xm.domain()
    d = xm.boundary
    sig = FactorSignature((G, T, T))
    out_sig = FactorSignature((G, T))
    viol = []
    n = 0
    for w in enumerate_cosmash_words(sig, max_len):
        n += 1
        right = fold_word(w, out_sig, (0, 1, 1))
        left = fold_word(w, out_sig, (0, 0, 1),
                         (lambda v: v, lambda v: d.table[v], lambda v: v))
        if action_core_word(xm.action, right) != action_core_word(xm.action, left):
            viol.append(format_word(w))
    return {"max_len": max_len, "words": n, "violations": viol, "ok": not viol}


# -- constructors ---------------------------------------------------------------


def conjugation_xmod(G: FiniteGroup) -> CrossedModule:
    return CrossedModule(conjugation_action(G), identity_hom(G), check=False,
                         label=f"({G.label}=>{G.label})")


def xmod_from_normal_subgroup(G: FiniteGroup, elems) -> CrossedModule:
    """Inclusion of a normal subgroup with the conjugation action."""
    S, incl = subgroup(G, sorted(elems))
    act = conjugation_action_on(incl)  # refuses non-normal images
    return CrossedModule(act, incl, check=False,
                         label=f"({S.label}<{G.label})")


def discrete_xmod(G: FiniteGroup) -> CrossedModule:
    one = trivial_group()
    return CrossedModule(trivial_action(G, one), trivial_hom(one, G),
                         check=False, label=f"(1->{G.label})")


def module_xmod(action: GroupAction) -> CrossedModule:
    """Trivial boundary; the carrier must be commutative for the Peiffer law."""
    if not action.carrier.commutative:
        raise GroupError("a trivial boundary needs a commutative carrier")
    return CrossedModule(action, trivial_hom(action.carrier, action.actor))


def xmod_product(a: CrossedModule, b: CrossedModule):
    """Product crossed module with injection and projection morphisms.

    Returns (product, inj1, inj2, proj1, proj2); the laws transfer
    componentwise, and the injections commute with everything because the
    complementary coordinate stays at the identity.
    """
    T, iT1, iT2, pT1, pT2 = direct_product(a.domain(), b.domain())
    G, iG1, iG2, pG1, pG2 = direct_product(a.codomain(), b.codomain())
    mb = b.codomain().order
    nb = b.domain().order
    table = []
    for g in range(G.order):
        g1, g2 = divmod(g, mb)
        r1 = a.action.table[g1]
        r2 = b.action.table[g2]
        table.append([r1[t1] * nb + r2[t2]
                      for t1 in range(a.domain().order) for t2 in range(nb)])
    act = GroupAction(G, T, table, check=False)
    d = GroupHom(T, G, tuple(a.boundary.table[t1] * mb + b.boundary.table[t2]
                             for t1 in range(a.domain().order)
                             for t2 in range(nb)), check=False)
    xm = CrossedModule(act, d, check=False, label=f"{a.label}x{b.label}")
    inj1 = XModMorphism(a, xm, iT1, iG1, check=False)
    inj2 = XModMorphism(b, xm, iT2, iG2, check=False)
    proj1 = XModMorphism(xm, a, pT1, pG1, check=False)
    proj2 = XModMorphism(xm, b, pT2, pG2, check=False)
    return xm, inj1, inj2, proj1, proj2


def product_split_ses(a: CrossedModule, b: CrossedModule) -> "XModSplitSES":
    """The canonical split short exact sequence b -> a x b -> a."""
    _, inj1, inj2, proj1, _ = xmod_product(a, b)
    return XModSplitSES(inj2, proj1, inj1)


def relabel_xmod(xm: CrossedModule, perm_T, perm_G) -> CrossedModule:
    """Transport everything along element permutations (old index -> new index).

    Produces an isomorphic crossed module on shuffled carriers; useful for
    checking that algorithms do not depend on accidental element order.
    """
    T, G = xm.domain(), xm.codomain()
    perm_T, perm_G = list(perm_T), list(perm_G)
    if sorted(perm_T) != list(range(T.order)) or sorted(perm_G) != list(range(G.order)):
        raise GroupError("relabeling needs one permutation per carrier")
    invT = [0] * T.order
    for i, p in enumerate(perm_T):
        invT[p] = i
    invG = [0] * G.order
    for i, p in enumerate(perm_G):
        invG[p] = i
    tT = [[perm_T[T.table[invT[x]][invT[y]]] for y in range(T.order)]
          for x in range(T.order)]
    tG = [[perm_G[G.table[invG[x]][invG[y]]] for y in range(G.order)]
          for x in range(G.order)]
    T2 = FiniteGroup(tT, names=[T.names[invT[i]] for i in range(T.order)],
                     label=T.label + "'")
    G2 = FiniteGroup(tG, names=[G.names[invG[i]] for i in range(G.order)],
                     label=G.label + "'")
    act = GroupAction(G2, T2, [[perm_T[xm.action.table[invG[g]][invT[t]]]
                                for t in range(T.order)] for g in range(G.order)])
    d = GroupHom(T2, G2, tuple(perm_G[xm.boundary.table[invT[t]]]
                               for t in range(T.order)))
    return CrossedModule(act, d, label=xm.label + "'")


# -- morphisms ------------------------------------------------------------------


def morphism_witness(src: CrossedModule, tgt: CrossedModule, fT: GroupHom,
                     fG: GroupHom):
    """None, or ("square", t) or ("equivariance", (g, t)) locating the failure."""
    if fT.source is not src.domain() or fT.target is not tgt.domain():
        raise GroupError("fT endpoints do not match the crossed modules")
    if fG.source is not src.codomain() or fG.target is not tgt.codomain():
        raise GroupError("fG endpoints do not match the crossed modules")
    for t in range(src.domain().order):
        if tgt.boundary.table[fT.table[t]] != fG.table[src.boundary.table[t]]:
            return ("square", t)
    for g in range(src.codomain().order):
        frow = src.action.table[g]
        grow = tgt.action.table[fG.table[g]]
        for t in range(src.domain().order):
            if fT.table[frow[t]] != grow[fT.table[t]]:
                return ("equivariance", (g, t))
    return None


class XModMorphism:
    """Pair of homs commuting with the boundaries and the actions."""

    def __init__(self, src: CrossedModule, tgt: CrossedModule, fT: GroupHom,
                 fG: GroupHom, *, check: bool = True):
        self.src = src
        self.tgt = tgt
        self.fT = fT
        self.fG = fG
        if check:
            w = morphism_witness(src, tgt, fT, fG)
            if w is not None:
                kind, data = w
                if kind == "square":
                    raise GroupError(
                        f"boundary square fails at t={src.domain().names[data]}")
                g, t = data
                raise GroupError(
                    f"equivariance of the pair fails at "
                    f"(g={src.codomain().names[g]}, t={src.domain().names[t]})")

    def __repr__(self):
        return f"<XModMorphism {self.src.label} -> {self.tgt.label}>"


def identity_morphism(xm: CrossedModule) -> XModMorphism:
    return XModMorphism(xm, xm, identity_hom(xm.domain()),
                        identity_hom(xm.codomain()), check=False)


def compose_morphisms(f: XModMorphism, g: XModMorphism) -> XModMorphism:
    """f after g."""
    if g.tgt is not f.src:
        raise GroupError("morphism composition mismatch")
    return XModMorphism(g.src, f.tgt, compose(f.fT, g.fT), compose(f.fG, g.fG),
                        check=False)


def square_to_morphism(src: CrossedModule, tgt: CrossedModule, fT: GroupHom,
                       fG: GroupHom) -> XModMorphism:
    return XModMorphism(src, tgt, fT, fG)


def enumerate_xmod_morphisms(src: CrossedModule, tgt: CrossedModule,
                             budget=None) -> list:
    """All morphisms, ordered by (fG, fT) enumeration order.  Exhaustive."""
    out = []
    homs_T = enumerate_homs(src.domain(), tgt.domain(), budget=budget)
    for fG in enumerate_homs(src.codomain(), tgt.codomain(), budget=budget):
        for fT in homs_T:
            if morphism_witness(src, tgt, fT, fG) is None:
                out.append(XModMorphism(src, tgt, fT, fG, check=False))
    return out


# -- the connected components functor -------------------------------------------


def pi0(xm: CrossedModule):
    """Cokernel of the boundary: G / im(d) with its projection.

    The image is normal for any crossed module; a non-normal image (possible
    for raw precrossed data) is refused by `quotient` with a witness.
    """
    if xm._pi0 is None:
        xm._pi0 = quotient(xm.codomain(), sorted(xm.boundary.image_elements),
                           label=f"pi0{xm.label}")
    return xm._pi0


def pi0_via_coequalizer(xm: CrossedModule):
    """Coequalizer of the two maps T x| G -> G, (t, g) -> g and (t, g) -> d(t) g.

    Quotients G by the normal closure of the difference set.  Must agree with
    the cokernel route; `pi0_comparison` checks that on the nose.
    """
    ext = semidirect_product(xm.action)
    G = xm.codomain()
    m = G.order
    d = xm.boundary.table
    c_table = []
    for e in range(ext.total.order):
        t, g = divmod(e, m)
        c_table.append(G.mul(d[t], g))
    c = GroupHom(ext.total, G, tuple(c_table))  # hom because of equivariance
    diffs = {G.mul(c_table[e], G.inv(ext.p.table[e])) for e in range(ext.total.order)}
    closure = normal_closure(G, diffs)
    return quotient(G, sorted(closure), label=f"coeq{xm.label}")


def pi0_comparison(xm: CrossedModule) -> GroupHom:
    """The isomorphism from the cokernel route to the coequalizer route."""
    Q1, p1 = pi0(xm)
    Q2, p2 = pi0_via_coequalizer(xm)
    reps = [None] * Q1.order
    for g in range(xm.codomain().order):
        q = p1.table[g]
        if reps[q] is None:
            reps[q] = g
    table = tuple(p2.table[r] for r in reps)
    iso = GroupHom(Q1, Q2, table)
    for g in range(xm.codomain().order):
        if iso.table[p1.table[g]] != p2.table[g]:
            raise GroupError("comparison map does not commute with the projections")
    if not (iso.is_injective() and iso.is_surjective()):
        raise GroupError("comparison map is not an isomorphism")
    return iso


def pi0_map(mor: XModMorphism) -> GroupHom:
    """The induced hom on cokernels."""
    Q1, p1 = pi0(mor.src)
    Q2, p2 = pi0(mor.tgt)
    table = [None] * Q1.order
    for g in range(mor.src.codomain().order):
        q = p1.table[g]
        val = p2.table[mor.fG.table[g]]
        if table[q] is None:
            table[q] = val
        elif table[q] != val:
            raise GroupError("image of the boundary is not respected")
    return GroupHom(Q1, Q2, tuple(table))


# -- kernels and split short exact sequences -------------------------------------


def xmod_kernel(mor: XModMorphism):
    """Kernel crossed module of a morphism, with its inclusion."""
    KT, iT = kernel(mor.fT)
    KG, iG = kernel(mor.fG)
    tlook = {iT.table[t]: t for t in range(KT.order)}
    glook = {iG.table[g]: g for g in range(KG.order)}
    act_rows = []
    for g in range(KG.order):
        row = mor.src.action.table[iG.table[g]]
        new_row = []
        for t in range(KT.order):
            moved = row[iT.table[t]]
            if moved not in tlook:
                raise GroupError("kernel is not closed under the action")
            new_row.append(tlook[moved])
        act_rows.append(new_row)
    act = GroupAction(KG, KT, act_rows, check=False)
    d_table = []
    for t in range(KT.order):
        im = mor.src.boundary.table[iT.table[t]]
        if im not in glook:
            raise GroupError("boundary does not restrict to the kernels")
        d_table.append(glook[im])
    d = GroupHom(KT, KG, tuple(d_table), check=False)
    ker_xm = CrossedModule(act, d, check=False, label=f"ker{mor.src.label}")
    incl = XModMorphism(ker_xm, mor.src, iT, iG, check=False)
    return ker_xm, incl


class XModSplitSES:
    """kappa then pi with section sigma, split exact at both levels."""

    def __init__(self, kappa: XModMorphism, pi: XModMorphism,
                 sigma: XModMorphism, *, check: bool = True):
        self.kappa = kappa
        self.pi = pi
        self.sigma = sigma
        if check:
            if kappa.tgt is not pi.src:
                raise GroupError("kappa must land in the domain of pi")
            if sigma.src is not pi.tgt or sigma.tgt is not pi.src:
                raise GroupError("sigma must section pi")
            # levelwise split extensions enforce exactness and the splitting
            SplitExtension(kappa.fT, pi.fT, sigma.fT)
            SplitExtension(kappa.fG, pi.fG, sigma.fG)

    def __repr__(self):
        return (f"<XModSplitSES {self.kappa.src.label} -> "
                f"{self.pi.src.label} -> {self.pi.tgt.label}>")


def pi0_preserves_split_ses(s: XModSplitSES) -> dict:
    """Apply pi0 levelwise and test split exactness of the result."""
    k0 = pi0_map(s.kappa)
    p0 = pi0_map(s.pi)
    s0 = pi0_map(s.sigma)
    Q3 = p0.target
    section_ok = all(p0.table[s0.table[q]] == q for q in range(Q3.order))
    surj_ok = p0.is_surjective()
    exact_ok = p0.kernel_elements == k0.image_elements
    mono_ok = k0.is_injective()
    return {
        "section": section_ok,
        "retraction_surjective": surj_ok,
        "kernel_equals_image": exact_ok,
        "kernel_map_injective": mono_ok,
        "ok": section_ok and surj_ok and exact_ok and mono_ok,
    }


def discrete_adjunction_check(xm: CrossedModule, H: FiniteGroup,
                              budget=None) -> dict:
    """Hom-set bijection test: morphisms into the discrete crossed module on H
    against group homs out of pi0.

    A morphism into (1 -> H) is a hom G -> H killing the boundary image; those
    are exactly the homs factoring through the cokernel projection.
    """
    disc = discrete_xmod(H)
    mors = enumerate_xmod_morphisms(xm, disc, budget=budget)
    side_a = {m.fG.table for m in mors}
    Q, proj = pi0(xm)
    factored = {compose(phi, proj).table for phi in enumerate_homs(Q, H, budget=budget)}
    return {
        "morphisms": len(side_a),
        "cokernel_homs": len(factored),
        "ok": side_a == factored,
    }
