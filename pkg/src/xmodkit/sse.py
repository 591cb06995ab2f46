"""Split-extension view of crossed modules over one fixed base.

A crossed module (T -> G) is the same thing as the split extension
T x| G -> G with its canonical section, and a morphism over the base G is a
carrier-level hom commuting with boundaries and the action while G stays put.
This module works in that slice: regular epis, section searches, relative
projectivity, and free covers.

Search semantics: a returned None means the search space was exhausted, so
nonexistence is proven at the stated budget-free scale.  Running out of budget
raises BudgetExhausted instead; the two outcomes are never conflated.
"""

from .errors import BudgetExhausted, GroupError, InvariantBreach
from .actions import semidirect_product, trivial_action
from .groups import (
    GroupHom, enumerate_homs, identity_hom, is_z4_module, search_homs,
    z4_module,
)
from .xmod import CrossedModule, XModMorphism, morphism_witness


class SSEMorphism:
    """Morphism of crossed modules over a common base: the base map is id."""

    def __init__(self, src: CrossedModule, tgt: CrossedModule, fT: GroupHom, *,
                 check: bool = True):
        if src.codomain() is not tgt.codomain():
            raise GroupError("morphisms over a base need the same base group")
        self.src = src
        self.tgt = tgt
        self.fT = fT
        self.base = src.codomain()
        if check:
            w = morphism_witness(src, tgt, fT, identity_hom(self.base))
            if w is not None:
                kind, data = w
                if kind == "square":
                    raise GroupError(
                        f"boundary square fails at t={src.domain().names[data]}")
                g, t = data
                raise GroupError(
                    f"equivariance fails at (g={self.base.names[g]}, "
                    f"t={src.domain().names[t]})")

    def as_xmod_morphism(self) -> XModMorphism:
        return XModMorphism(self.src, self.tgt, self.fT,
                            identity_hom(self.base), check=False)

    def __call__(self, t: int) -> int:
        return self.fT.table[t]

    def __repr__(self):
        return f"<SSEMorphism {self.src.label} -> {self.tgt.label}>"


def identity_sse(xm: CrossedModule) -> SSEMorphism:
    return SSEMorphism(xm, xm, identity_hom(xm.domain()), check=False)


def compose_sse(f: SSEMorphism, g: SSEMorphism) -> SSEMorphism:
    """f after g."""
    if g.tgt is not f.src:
        raise GroupError("composition mismatch")
    from .groups import compose
    return SSEMorphism(g.src, f.tgt, compose(f.fT, g.fT), check=False)


def total_map(mor: SSEMorphism) -> GroupHom:
    """The induced hom between the semidirect totals, (t, g) -> (fT t, g)."""
    e1 = semidirect_product(mor.src.action)
    e2 = semidirect_product(mor.tgt.action)
    m = mor.base.order
    table = []
    for e in range(e1.total.order):
        t, g = divmod(e, m)
        table.append(mor.fT.table[t] * m + g)
    return GroupHom(e1.total, e2.total, tuple(table))


def is_regular_epi(mor: SSEMorphism) -> bool:
    """Surjectivity on carriers; cross-checked against the total-level map.

    Over a fixed base the two must agree; a mismatch would mean the package
    itself is broken, hence InvariantBreach rather than a report entry.
    """
    carrier_surj = mor.fT.is_surjective()
    total_surj = total_map(mor).is_surjective()
    if carrier_surj != total_surj:
        raise InvariantBreach(
            "carrier and total surjectivity disagree on a same-base morphism")
    return carrier_surj


def enumerate_sse_morphisms(src: CrossedModule, tgt: CrossedModule,
                            budget=None) -> list:
    """All morphisms over the common base, in carrier-hom order.  Exhaustive."""
    if src.codomain() is not tgt.codomain():
        raise GroupError("morphisms over a base need the same base group")
    ident = identity_hom(src.codomain())
    out = []
    for fT in enumerate_homs(src.domain(), tgt.domain(), budget=budget):
        if morphism_witness(src, tgt, fT, ident) is None:
            out.append(SSEMorphism(src, tgt, fT, check=False))
    return out


def _equivariant(mor_src: CrossedModule, mor_tgt: CrossedModule, table) -> bool:
    act1 = mor_src.action.table
    act2 = mor_tgt.action.table
    for g in range(mor_src.codomain().order):
        r1 = act1[g]
        r2 = act2[g]
        for t in range(mor_src.domain().order):
            if table[r1[t]] != r2[table[t]]:
                return False
    return True


def brute_force_section(mor: SSEMorphism, budget=None):
    """A section of a regular epi over the base, or None when none exists.

    Candidate images are fibers of the carrier map, which already forces the
    section law and the boundary square; equivariance is filtered afterwards.
    Exhausting the search proves nonexistence; BudgetExhausted passes through.
    """
    if not is_regular_epi(mor):
        raise GroupError("sections are only searched under regular epis")
    A, B = mor.src.domain(), mor.tgt.domain()
    fibers = [[] for _ in range(B.order)]
    for t in range(A.order):
        fibers[mor.fT.table[t]].append(t)
    for phi in search_homs(B, A.mul, A.identity, lambda t: fibers[t],
                           budget=budget):
        table = tuple(phi[i] for i in range(B.order))
        if _equivariant(mor.tgt, mor.src, table):
            return SSEMorphism(mor.tgt, mor.src,
                               GroupHom(B, A, table, check=False), check=False)
    return None


def lift_along(epi: SSEMorphism, u: SSEMorphism, budget=None):
    """A morphism v with epi . v = u, or None when no lift exists.

    u must land in the target of epi and share its base.  Fiber candidates
    force the triangle and the boundary square; equivariance is filtered.
    """
    if u.tgt is not epi.tgt:
        raise GroupError("the morphism to lift must land in the epi target")
    if u.base is not epi.base:
        raise GroupError("lifting needs a common base")
    X, A, B = u.src.domain(), epi.src.domain(), epi.tgt.domain()
    fibers = [[] for _ in range(B.order)]
    for t in range(A.order):
        fibers[epi.fT.table[t]].append(t)
    if any(not fb for fb in fibers):
        raise GroupError("can only lift along a surjection")
    for phi in search_homs(X, A.mul, A.identity,
                           lambda t: fibers[u.fT.table[t]], budget=budget):
        table = tuple(phi[i] for i in range(X.order))
        if _equivariant(u.src, epi.src, table):
            return SSEMorphism(u.src, epi.src,
                               GroupHom(X, A, table, check=False), check=False)
    return None


def is_projective_rel(xm: CrossedModule, epis, budget=None) -> dict:
    """Lifting test of xm against every given regular epi over the same base.

    Tries every morphism from xm into each epi target and searches a lift.
    The report either passes or pins the first (epi, morphism) with no lift;
    nonexistence there is by exhaustion, not by giving up.
    """
    checked = 0
    for i, epi in enumerate(epis):
        if epi.base is not xm.codomain():
            raise GroupError("projectivity is relative to epis over the same base")
        if not is_regular_epi(epi):
            raise GroupError(f"map {i} in the class is not a regular epi")
        for j, u in enumerate(enumerate_sse_morphisms(xm, epi.tgt, budget=budget)):
            checked += 1
            if lift_along(epi, u, budget=budget) is None:
                return {
                    "ok": False,
                    "lifting_problems": checked,
                    "failed_epi": i,
                    "failed_morphism": j,
                }
    return {"ok": True, "lifting_problems": checked,
            "failed_epi": None, "failed_morphism": None}


# -- free covers in the commutative exponent-4 slice ----------------------------


class FreeSSE:
    """A free cover: free carrier, basis, covering epi, and its certificates."""

    def __init__(self, cover: SSEMorphism, basis_names, generator_images,
                 kernel_witnesses):
        self.cover = cover
        self.free = cover.src
        self.target = cover.tgt
        self.basis_names = tuple(basis_names)
        self.generator_images = tuple(generator_images)
        self.kernel_witnesses = tuple(kernel_witnesses)

    def certificate(self) -> dict:
        T = self.target.domain()
        gen_ok = len(T.closure(self.generator_images)) == T.order
        ker = self.cover.fT.kernel_elements
        wit_ok = all(w in ker for w in self.kernel_witnesses)
        span_ok = len(self.free.domain().closure(self.kernel_witnesses)) == len(ker)
        return {
            "rank": len(self.basis_names),
            "generators_generate": gen_ok,
            "kernel_witnesses": len(self.kernel_witnesses),
            "witnesses_in_kernel": wit_ok,
            "witnesses_span_kernel": span_ok,
            "ok": gen_ok and wit_ok and span_ok,
        }

    def __repr__(self):
        return f"<FreeSSE rank {len(self.basis_names)} over {self.target.label}>"


def free_cover(xm: CrossedModule) -> FreeSSE:
    """Free cover of a trivially-acted crossed module with exponent-4 carrier.

    Takes the greedy generating sequence of the carrier, builds the free
    commutative exponent-4 group on it, and covers by sending basis vectors to
    the generators.  The boundary of the cover is the composite, so the cover
    map is a regular epi over the base by construction.
    """
    T, G = xm.domain(), xm.codomain()
    if not is_z4_module(T):
        raise GroupError("free covers live over commutative exponent-4 carriers")
    if not xm.action.is_trivial():
        raise GroupError("free covers here require a trivial action")
    gens = list(T.generators)
    n = len(gens)
    R = z4_module(n, 0, label=f"F{n}")
    # cover: digit vector (a_1..a_n) -> sum a_i * gens[i]; names are the digit
    # strings, most significant first, so decode through them
    cover_table = []
    for r in range(R.order):
        acc = T.identity
        for i, ch in enumerate(R.names[r] if n else ""):
            acc = T.mul(acc, T.power(gens[i], int(ch)))
        cover_table.append(acc)
    phi = GroupHom(R, T, tuple(cover_table))
    if not phi.is_surjective():
        raise InvariantBreach("generating sequence failed to cover the carrier")
    dR = GroupHom(R, G, tuple(xm.boundary.table[phi.table[r]]
                              for r in range(R.order)), check=False)
    F = CrossedModule(trivial_action(G, R), dR, check=False,
                      label=f"F({xm.label})")
    mor = SSEMorphism(F, xm, phi, check=False)
    # witnesses: a greedy generating sequence of the kernel
    ker = sorted(phi.kernel_elements)
    wits = []
    spanned = R.closure([])
    for w in ker:
        if w in spanned:
            continue
        wits.append(w)
        spanned = R.closure(set(spanned) | {w})
    basis = ["0" * i + "1" + "0" * (n - i - 1) for i in range(n)]
    return FreeSSE(mor, basis, gens, wits)
