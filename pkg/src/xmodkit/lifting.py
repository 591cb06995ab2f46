"""Section constructions with verified certificates, and the free-object calculus.

Two constructions produce sections of levelwise-surjective crossed-module
morphisms.  `projective_section` targets an inclusion crossed module (the
kernel of a split extension, acting by conjugation inside the total group):
it lifts the canonical base section through the base-level map, searches an
equivariant section of the carrier-level map over that lift, and assembles
the base-level section by the coequalizer formula
g_G(k(q) s(p)) = d(g_T(q)) g_1(p).  `pullback_section` handles a morphism of
inclusion crossed modules: it splits the induced map on cokernels, factors
the target base through the pullback of (cokernel projection, induced map),
lifts that factorization through the comparison map out of the source base,
and restricts to the carriers.

Both run exhaustive backtracking searches, so a failure status is a proof of
nonexistence, not a timeout; running out of budget raises instead.  Both
re-verify every claimed equation before reporting success.  A verification
failure after successful searches cannot be caused by input that passed the
preconditions, so it raises InvariantBreach rather than returning a bad
certificate.

The free-object calculus works with words, because free crossed modules on a
nontrivial group have infinite carriers.  A pair of homs (f: H -> T,
g: H -> G) extends to an evaluator on two-slot words over (H, H): base
values through the copairing [g, d f], carrier values of flat words read off
inside the semidirect product T x| G.  `hom_bijection_check` confirms that
every pair reads back from its evaluator and distinct pairs give distinct
evaluators.
"""

from .errors import GroupError, InvariantBreach
from .groups import (
    FiniteGroup, GroupHom, compose, enumerate_homs, find_section,
    pullback, search_homs,
)
from .actions import (
    SplitExtension, action_from_extension, action_core_word,
    conjugation_action_on, semidirect_product,
)
from .words import (
    FactorSignature, WordHom, commutator, enumerate_cosmash_words,
    enumerate_flat_words, enumerate_words, fold_word, format_word, in_flat,
    in_ternary_cosmash, map_word, single,
)
from .xmod import CrossedModule, XModMorphism, morphism_witness, pi0, pi0_map


class SectionCertificate:
    """Outcome of a section construction: status, verified equations, the maps.

    Status "success" means a section was built and every equation listed in
    `equations` was re-verified exhaustively.  Any other status names the
    search that completed without a solution; equations verified before that
    point stay in the dict.  A certificate is never "success" with a failed
    equation, because verification failures raise at build time instead.
    """

    def __init__(self, status, equations, section=None, detail=None):
        self.status = status
        self.equations = dict(equations)
        self.section = section
        self.detail = dict(detail or {})

    @property
    def ok(self) -> bool:
        return self.status == "success" and all(self.equations.values())

    def to_json(self) -> dict:
        out = {
            "status": self.status,
            "ok": self.ok,
            "equations": dict(self.equations),
            "detail": dict(self.detail),
        }
        if self.section is not None:
            out["section"] = {"fT": list(self.section.fT.table),
                              "fG": list(self.section.fG.table)}
        return out

    def __repr__(self):
        return f"<SectionCertificate {self.status}>"


# -- inclusion form ---------------------------------------------------------


def inclusion_xmod(ext: SplitExtension) -> CrossedModule:
    """The kernel embedding of a split extension as a crossed module.

    Carrier the kernel group, base the total group, boundary the embedding,
    action by conjugation through it.
    """
    return CrossedModule(conjugation_action_on(ext.k), ext.k, check=False,
                         label=f"({ext.kernel_group.label}<{ext.total.label})")


def inclusion_extension(xm: CrossedModule, budget=None) -> SplitExtension:
    """Present a crossed module as kernel -> base -> cokernel, split.

    Needs an injective boundary acting by conjugation, and a cokernel
    projection that splits; the splitting is searched, so None from the
    search means proven unsplit and is refused loudly.
    """
    if not xm.boundary.is_injective():
        raise GroupError("inclusion form needs an injective boundary")
    if conjugation_action_on(xm.boundary) != xm.action:
        raise GroupError("action is not conjugation through the boundary")
    C, proj = pi0(xm)
    s = find_section(proj, budget=budget)
    if s is None:
        raise GroupError("cokernel projection of the boundary does not split")
    return SplitExtension(xm.boundary, proj, s)


def _require_inclusion_target(epi: XModMorphism, ext: SplitExtension):
    tgt = epi.tgt
    if tgt.domain() is not ext.kernel_group or tgt.codomain() is not ext.total:
        raise GroupError("target crossed module does not live on the extension")
    if tuple(tgt.boundary.table) != tuple(ext.k.table):
        raise GroupError("target boundary is not the kernel embedding")
    if conjugation_action_on(ext.k) != tgt.action:
        raise GroupError("target action is not conjugation in the total group")


# -- the four-step section construction ---------------------------------------


def projective_section(epi: XModMorphism, ext: SplitExtension, *, budget=None,
                       ternary_len: int = 8) -> SectionCertificate:
    """Section of an epi onto an inclusion target, in four verified steps.

    (i) lift the canonical section of the base extension through the
    base-level map; (ii) for each such lift, search a section of the
    carrier-level map equivariant for the action pulled back along the lift;
    (iii) define the base-level section on a product k(q) s(p) by the
    coequalizer formula d(g_T(q)) g_1(p); (iv) re-verify everything: the
    formula defines a homomorphism, both maps are sections, the pair is a
    crossed-module morphism, and a ternary word audit passes.

    Steps (i) and (ii) search over fibers exhaustively, so the failure
    statuses "no-lift-of-section" and "no-equivariant-section" are proofs of
    nonexistence.  A step-(iv) failure raises InvariantBreach: for inputs
    that pass the preconditions, the first three steps guarantee step (iv).
    """
    _require_inclusion_target(epi, ext)
    if not (epi.fT.is_surjective() and epi.fG.is_surjective()):
        raise GroupError("both levels of the epi must be surjective")
    src = epi.src
    T, G = src.domain(), src.codomain()
    Q, E, P = ext.kernel_group, ext.total, ext.base
    psi = action_from_extension(ext)
    phi_act = src.action.table

    fibers_G = [[] for _ in range(E.order)]
    for x in range(G.order):
        fibers_G[epi.fG.table[x]].append(x)
    fibers_T = [[] for _ in range(T.order)]
    for t in range(T.order):
        fibers_T[epi.fT.table[t]].append(t)

    found = None
    base_lifts = 0
    for lift in search_homs(P, G.mul, G.identity,
                            lambda p: fibers_G[ext.s.table[p]], budget=budget):
        base_lifts += 1
        g1 = [lift[p] for p in range(P.order)]
        beta = [phi_act[g1[p]] for p in range(P.order)]
        for phi in search_homs(Q, T.mul, T.identity,
                               lambda q: fibers_T[q], budget=budget):
            gT = [phi[q] for q in range(Q.order)]
            if all(gT[psi.table[p][q]] == beta[p][gT[q]]
                   for p in range(P.order) for q in range(Q.order)):
                found = (g1, gT)
                break
        if found:
            break
    if found is None:
        status = "no-equivariant-section" if base_lifts else "no-lift-of-section"
        return SectionCertificate(status, {},
                                  detail={"base_lifts": base_lifts})
    g1, gT = found

    # (iii) decode each total element as k(q) s(p) and apply the formula
    d = src.boundary.table
    klook = {ext.k.table[q]: q for q in range(Q.order)}
    gG = [0] * E.order
    for e in range(E.order):
        p = ext.p.table[e]
        q = klook[E.mul(e, E.inv(ext.s.table[p]))]
        gG[e] = G.mul(d[gT[q]], g1[p])

    # (iv) re-verify every equation; any failure here is a bug, never input
    eqs = {}
    hom_ok = True
    for a in range(E.order):
        row, ga = E.table[a], gG[a]
        for b in range(E.order):
            if gG[row[b]] != G.mul(ga, gG[b]):
                hom_ok = False
                break
        if not hom_ok:
            break
    eqs["coequalizer-formula"] = hom_ok and all(
        gG[E.mul(ext.k.table[q], ext.s.table[p])] == G.mul(d[gT[q]], g1[p])
        for q in range(Q.order) for p in range(P.order))
    eqs["lifting-over-fG"] = all(
        epi.fG.table[g1[p]] == ext.s.table[p] for p in range(P.order))
    eqs["equivariant-section-of-fT"] = (
        all(epi.fT.table[gT[q]] == q for q in range(Q.order))
        and all(gT[psi.table[p][q]] == phi_act[g1[p]][gT[q]]
                for p in range(P.order) for q in range(Q.order)))
    eqs["section-of-fG"] = all(epi.fG.table[gG[e]] == e for e in range(E.order))
    eqs["boundary-square"] = all(gG[ext.k.table[q]] == d[gT[q]]
                                 for q in range(Q.order))
    gT_hom = GroupHom(Q, T, tuple(gT), check=False)
    gG_hom = GroupHom(E, G, tuple(gG), check=False)
    eqs["equivariance-elementwise"] = (
        morphism_witness(epi.tgt, src, gT_hom, gG_hom) is None)
    for name, okay in eqs.items():
        if not okay:
            raise InvariantBreach(f"section verification failed: {name}")
    section = XModMorphism(epi.tgt, src, gT_hom, gG_hom, check=False)
    words, brackets = _ternary_morphism_audit(section, ternary_len)
    eqs["ternary-equivariance"] = True  # the audit raises on any mismatch
    return SectionCertificate("success", eqs, section=section,
                              detail={"base_lifts": base_lifts,
                                      "ternary_len": ternary_len,
                                      "ternary_words": words,
                                      "ternary_brackets": brackets})


def _ternary_morphism_audit(mor: XModMorphism, max_len: int):
    """Route compatibility of a morphism on ternary cosmash words.

    Audits every enumerated ternary cosmash word over (base, carrier,
    carrier) of the morphism's source, plus the bracket words
    [[base letter, carrier letter], carrier letter] over generators, which
    are the shortest words the enumeration cannot reach at small lengths.
    For each word both fold routes are evaluated on both sides; the two
    routes must agree on each side and the carrier map must carry source
    values to target values.  Returns (enumerated, brackets) counts; any
    mismatch raises InvariantBreach.
    """
    A, B = mor.src, mor.tgt
    EA, QA = A.codomain(), A.domain()
    GB, TB = B.codomain(), B.domain()
    sigA = FactorSignature((EA, QA, QA))
    outA = FactorSignature((EA, QA))
    sigB = FactorSignature((GB, TB, TB))
    outB = FactorSignature((GB, TB))
    dA, dB = A.boundary.table, B.boundary.table
    fG, fT = mor.fG.table, mor.fT.table
    letter_maps = (lambda v: fG[v], lambda v: fT[v], lambda v: fT[v])
    ident = lambda v: v

    def check(w):
        rA = action_core_word(A.action, fold_word(w, outA, (0, 1, 1)))
        lA = action_core_word(A.action, fold_word(
            w, outA, (0, 0, 1), (ident, lambda v: dA[v], ident)))
        w2 = map_word(w, sigB, letter_maps)
        rB = action_core_word(B.action, fold_word(w2, outB, (0, 1, 1)))
        lB = action_core_word(B.action, fold_word(
            w2, outB, (0, 0, 1), (ident, lambda v: dB[v], ident)))
        if not (rA == lA and rB == lB and fT[rA] == rB):
            raise InvariantBreach(f"ternary audit failed on {format_word(w)}")

    n = 0
    for w in enumerate_cosmash_words(sigA, max_len):
        check(w)
        n += 1
    brackets = 0
    for e in EA.generators:
        we = single(sigA, 0, e)
        for q in QA.generators:
            wq = commutator(we, single(sigA, 1, q))
            for u in QA.generators:
                w = commutator(wq, single(sigA, 2, u))
                if len(w) and in_ternary_cosmash(w):
                    check(w)
                    brackets += 1
    return n, brackets


# -- the pullback section construction ----------------------------------------


def pullback_section(mor: XModMorphism, *, budget=None) -> SectionCertificate:
    """Section of a levelwise surjection between inclusion crossed modules.

    Computes the induced map h on cokernels, asserts the comparison map from
    the source base into the pullback of (target cokernel projection, h) is
    surjective, searches a section of h, forms the factorization of the
    target base through the pullback, lifts it through the comparison map,
    and restricts to the carriers.  Both searches are exhaustive over all
    cokernel sections, so "no-cokernel-section" and
    "no-lift-through-comparison" are proofs of nonexistence.
    """
    src, tgt = mor.src, mor.tgt
    for xm in (src, tgt):
        if not xm.boundary.is_injective():
            raise GroupError("pullback sections need injective boundaries")
        if conjugation_action_on(xm.boundary) != xm.action:
            raise GroupError("action is not conjugation through the boundary")
    if not (mor.fT.is_surjective() and mor.fG.is_surjective()):
        raise GroupError("both levels of the morphism must be surjective")
    T, G = src.domain(), src.codomain()
    Pc, Q = tgt.domain(), tgt.codomain()
    C1, proj1 = pi0(src)
    C2, proj2 = pi0(tgt)
    h = pi0_map(mor)

    eqs = {}
    eqs["induced-cokernel-map"] = all(
        h.table[proj1.table[g]] == proj2.table[mor.fG.table[g]]
        for g in range(G.order))
    PB, prQ, prC = pullback(proj2, h)
    pb_index = {(prQ.table[i], prC.table[i]): i for i in range(PB.order)}
    u_table = tuple(pb_index[(mor.fG.table[g], proj1.table[g])]
                    for g in range(G.order))
    if len(set(u_table)) != PB.order:
        raise InvariantBreach(
            "comparison into the pullback must be surjective when the "
            "carrier map is")
    eqs["comparison-surjective"] = True

    h_fibers = [[] for _ in range(C2.order)]
    for c in range(C1.order):
        h_fibers[h.table[c]].append(c)
    if any(not fb for fb in h_fibers):
        return SectionCertificate("no-cokernel-section", eqs,
                                  detail={"cokernel_sections": 0})
    u_fibers = [[] for _ in range(PB.order)]
    for g in range(G.order):
        u_fibers[u_table[g]].append(g)

    found = None
    jz_count = 0
    for jzd in search_homs(C2, C1.mul, C1.identity,
                           lambda c: h_fibers[c], budget=budget):
        jz_count += 1
        jz = [jzd[c] for c in range(C2.order)]
        jq = tuple(pb_index[(q, jz[proj2.table[q]])] for q in range(Q.order))
        for phi in search_homs(Q, G.mul, G.identity,
                               lambda q: u_fibers[jq[q]], budget=budget):
            found = (jz, jq, [phi[q] for q in range(Q.order)])
            break
        if found:
            break
    if found is None:
        status = "no-lift-through-comparison" if jz_count else "no-cokernel-section"
        return SectionCertificate(status, eqs,
                                  detail={"cokernel_sections": jz_count})
    jz, jq, gG = found

    dlook = {src.boundary.table[t]: t for t in range(T.order)}
    gT = []
    for p in range(Pc.order):
        t = dlook.get(gG[tgt.boundary.table[p]])
        if t is None:
            raise InvariantBreach("restriction left the embedded carrier")
        gT.append(t)
    try:
        gT_hom = GroupHom(Pc, T, tuple(gT))
    except GroupError as exc:
        raise InvariantBreach(
            f"carrier restriction is not a homomorphism: {exc}") from exc
    gG_hom = GroupHom(Q, G, tuple(gG), check=False)

    eqs["section-of-cokernel-map"] = all(
        h.table[jz[c]] == c for c in range(C2.order))
    eqs["pullback-factorization"] = all(
        u_table[gG[q]] == jq[q] for q in range(Q.order))
    eqs["section-of-fG"] = all(mor.fG.table[gG[q]] == q for q in range(Q.order))
    eqs["section-of-fT"] = all(mor.fT.table[gT[p]] == p for p in range(Pc.order))
    eqs["boundary-square"] = all(
        gG[tgt.boundary.table[p]] == src.boundary.table[gT[p]]
        for p in range(Pc.order))
    eqs["equivariance-elementwise"] = (
        morphism_witness(tgt, src, gT_hom, gG_hom) is None)
    for name, okay in eqs.items():
        if not okay:
            raise InvariantBreach(f"section verification failed: {name}")
    section = XModMorphism(tgt, src, gT_hom, gG_hom, check=False)
    return SectionCertificate("success", eqs, section=section,
                              detail={"cokernel_sections": jz_count,
                                      "pullback_order": PB.order})


# -- generic brute-force sections ----------------------------------------------


def find_xmod_section(epi: XModMorphism, *, budget=None):
    """A crossed-module section of a levelwise surjection, or None.

    Searches base-level sections over base fibers, carrier-level sections
    over carrier fibers already constrained to the boundary square, and
    filters by equivariance.  Completing the search proves nonexistence;
    running out of budget raises instead.
    """
    if not (epi.fT.is_surjective() and epi.fG.is_surjective()):
        raise GroupError("sections need both levels surjective")
    src, tgt = epi.src, epi.tgt
    T, G = src.domain(), src.codomain()
    Pc, Q = tgt.domain(), tgt.codomain()
    fibers_G = [[] for _ in range(Q.order)]
    for g in range(G.order):
        fibers_G[epi.fG.table[g]].append(g)
    fibers_T = [[] for _ in range(Pc.order)]
    for t in range(T.order):
        fibers_T[epi.fT.table[t]].append(t)
    d_src, d_tgt = src.boundary.table, tgt.boundary.table
    for phiG in search_homs(Q, G.mul, G.identity,
                            lambda q: fibers_G[q], budget=budget):
        gG = tuple(phiG[q] for q in range(Q.order))

        def cands(p, _gG=gG):
            want = _gG[d_tgt[p]]
            return [t for t in fibers_T[p] if d_src[t] == want]

        for phiT in search_homs(Pc, T.mul, T.identity, cands, budget=budget):
            gT_hom = GroupHom(Pc, T, tuple(phiT[p] for p in range(Pc.order)),
                              check=False)
            gG_hom = GroupHom(Q, G, gG, check=False)
            if morphism_witness(tgt, src, gT_hom, gG_hom) is None:
                return XModMorphism(tgt, src, gT_hom, gG_hom, check=False)
    return None


# -- the free-object evaluator ---------------------------------------------------


def _carrier_extension(xm: CrossedModule) -> SplitExtension:
    ext = getattr(xm, "_carrier_ext", None)
    if ext is None:
        ext = semidirect_product(xm.action)
        xm._carrier_ext = ext
    return ext


class FreeXModMorphism:
    """Evaluator pair extending letter homs (f: H -> T, g: H -> G) to words.

    Base values come from the copairing [g, d f] on two-slot words over
    (H, H).  Carrier values of flat words are computed in the semidirect
    product T x| G through the slot maps (s g, k f); flatness is exactly
    what keeps the value inside the embedded copy of T.
    """

    def __init__(self, H: FiniteGroup, xm: CrossedModule, f: GroupHom,
                 g: GroupHom):
        if f.source is not H or g.source is not H:
            raise GroupError("both letter maps must start from the same group")
        if f.target is not xm.domain() or g.target is not xm.codomain():
            raise GroupError("letter maps must land in the carrier and the base")
        self.H = H
        self.xm = xm
        self.f = f
        self.g = g
        self.sig = FactorSignature((H, H))
        self.base_hom = WordHom(self.sig, (g, compose(xm.boundary, f)),
                                xm.codomain())
        ext = _carrier_extension(xm)
        self._eval = WordHom(self.sig, (compose(ext.s, g), compose(ext.k, f)),
                             ext.total)
        self._klook = {ext.k.table[t]: t for t in range(xm.domain().order)}

    def base_value(self, w) -> int:
        """Evaluate any two-slot word in the base group."""
        if w.sig != self.sig:
            raise GroupError("word signature mismatch")
        return self.base_hom.evaluate(w)

    def carrier_value(self, w) -> int:
        """Evaluate a flat word (trivial slot-0 projection) in the carrier."""
        if w.sig != self.sig:
            raise GroupError("word signature mismatch")
        if not in_flat(w):
            raise GroupError("carrier evaluation needs a flat word")
        t = self._klook.get(self._eval.evaluate(w))
        if t is None:
            raise InvariantBreach("flat word escaped the embedded kernel")
        return t

    def letter_pair(self):
        """Read the letter maps back off length-one words."""
        f_back = tuple(self.carrier_value(single(self.sig, 1, h))
                       for h in range(self.H.order))
        g_back = tuple(self.base_value(single(self.sig, 0, h))
                       for h in range(self.H.order))
        return f_back, g_back

    def verify(self, max_len: int = 4) -> dict:
        """Boundary square on all flat words, unit readback, letter equivariance."""
        d = self.xm.boundary.table
        flats = list(enumerate_flat_words(self.sig, max_len))
        square = [format_word(w) for w in flats
                  if d[self.carrier_value(w)] != self.base_value(w)]
        unit_ok = self.letter_pair() == (self.f.table, self.g.table)
        act = self.xm.action.table
        inner = max(max_len - 2, 0)
        eq_bad = []
        pairs = 0
        cosmash = list(enumerate_cosmash_words(self.sig, inner))
        for slot in (0, 1):
            for v in range(self.H.order):
                letter = single(self.sig, slot, v)
                if not len(letter):
                    continue
                a = self.base_value(letter)
                for w in cosmash:
                    pairs += 1
                    conj = letter * w * letter.inverse()
                    if self.carrier_value(conj) != act[a][self.carrier_value(w)]:
                        eq_bad.append((slot, v, format_word(w)))
        return {
            "max_len": max_len,
            "flat_words": len(flats),
            "square_violations": square,
            "unit_ok": unit_ok,
            "equivariance_pairs": pairs,
            "equivariance_violations": eq_bad,
            "ok": not square and unit_ok and not eq_bad,
        }

    def __repr__(self):
        return f"<FreeXModMorphism {self.H.label} => {self.xm.label}>"


def free_universal_morphism(H: FiniteGroup, xm: CrossedModule, f: GroupHom,
                            g: GroupHom) -> FreeXModMorphism:
    """Extend a pair of letter homs to the evaluator pair on words over (H, H)."""
    return FreeXModMorphism(H, xm, f, g)


def hom_bijection_check(H: FiniteGroup, xm: CrossedModule, max_len: int = 2,
                        budget=None) -> dict:
    """Letter pairs versus evaluators: a bijection, witnessed both ways.

    Builds the evaluator of every pair in Hom(H, T) x Hom(H, G), reads the
    pair back off length-one words, and fingerprints each evaluator on all
    words up to max_len; the round trip must be the identity and the
    fingerprints pairwise distinct.
    """
    homs_f = enumerate_homs(H, xm.domain(), budget=budget)
    homs_g = enumerate_homs(H, xm.codomain(), budget=budget)
    sig = FactorSignature((H, H))
    words = list(enumerate_words(sig, max_len))
    flats = [w for w in words if in_flat(w)]
    total = 0
    round_trips = 0
    prints = set()
    for g in homs_g:
        for f in homs_f:
            total += 1
            ev = FreeXModMorphism(H, xm, f, g)
            if ev.letter_pair() == (f.table, g.table):
                round_trips += 1
            prints.add((tuple(ev.base_value(w) for w in words),
                        tuple(ev.carrier_value(w) for w in flats)))
    return {
        "pairs": total,
        "round_trips": round_trips,
        "distinct_evaluators": len(prints),
        "ok": round_trips == total and len(prints) == total,
    }
