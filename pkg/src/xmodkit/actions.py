"""Group actions by automorphisms, split extensions, and word evaluation.

An action here is a left action of an actor group on a carrier group where
every actor element acts as an automorphism.  Split extensions package a
kernel embedding, a retraction, and a section; the two views are equivalent
and both directions of the translation are implemented and cross-checked.

Word evaluation convention: words live over the two-slot signature
(actor, carrier), slot 0 for the actor.  Any word whose slot-0 projection
normalizes to the empty word evaluates to a carrier element.
"""

from .errors import GroupError
from .groups import FiniteGroup, GroupHom
from .words import FactorSignature, WordHom, evaluate


class GroupAction:
    """Left action of `actor` on `carrier` by automorphisms.

    table[g][x] is the image of carrier element x under actor element g.
    """

    def __init__(self, actor: FiniteGroup, carrier: FiniteGroup, table, *, check: bool = True):
        self.actor = actor
        self.carrier = carrier
        self.table = tuple(tuple(row) for row in table)
        if len(self.table) != actor.order or any(len(r) != carrier.order for r in self.table):
            raise GroupError("action table shape does not match the groups")
        if check:
            self._validate()

    def _validate(self):
        G, X = self.actor, self.carrier
        ident_row = tuple(range(X.order))
        if self.table[G.identity] != ident_row:
            raise GroupError("identity must act as the identity automorphism")
        mulX = X.table
        for g in range(G.order):
            row = self.table[g]
            if sorted(row) != list(ident_row):
                raise GroupError(f"actor element {G.names[g]} does not act bijectively")
            for x in range(X.order):
                rx = row[x]
                mrow = mulX[x]
                for y in range(X.order):
                    if row[mrow[y]] != mulX[rx][row[y]]:
                        raise GroupError(
                            f"actor element {G.names[g]} does not act by an automorphism")
        for g in range(G.order):
            rg = self.table[g]
            for h in range(G.order):
                rh = self.table[h]
                rgh = self.table[G.mul(g, h)]
                for x in range(X.order):
                    if rgh[x] != rg[rh[x]]:
                        raise GroupError("action is not compatible with actor multiplication")

    def apply(self, g: int, x: int) -> int:
        return self.table[g][x]

    def automorphism(self, g: int) -> GroupHom:
        return GroupHom(self.carrier, self.carrier, self.table[g], check=False)

    def is_trivial(self) -> bool:
        ident_row = tuple(range(self.carrier.order))
        return all(row == ident_row for row in self.table)

    def __eq__(self, other):
        return (isinstance(other, GroupAction) and self.actor is other.actor
                and self.carrier is other.carrier and self.table == other.table)

    def __hash__(self):
        return hash((id(self.actor), id(self.carrier), self.table))

    def __repr__(self):
        kind = "trivial " if self.is_trivial() else ""
        return (f"GroupAction({kind}actor order {self.actor.order}, "
                f"carrier order {self.carrier.order})")


def trivial_action(actor: FiniteGroup, carrier: FiniteGroup) -> GroupAction:
    row = tuple(range(carrier.order))
    return GroupAction(actor, carrier, [row] * actor.order, check=False)


def action_from_function(actor: FiniteGroup, carrier: FiniteGroup, fn) -> GroupAction:
    table = [[fn(g, x) for x in range(carrier.order)] for g in range(actor.order)]
    return GroupAction(actor, carrier, table)


def conjugation_action(G: FiniteGroup) -> GroupAction:
    return action_from_function(G, G, G.conj)


def conjugation_action_on(embedding: GroupHom) -> GroupAction:
    """Action of the codomain on the domain by conjugation through `embedding`.

    The embedding must be injective with normal image.
    """
    H, G = embedding.source, embedding.target
    if not embedding.is_injective():
        raise GroupError("embedding is not injective")
    lookup = {embedding.table[h]: h for h in range(H.order)}
    table = []
    for g in range(G.order):
        row = []
        for x in range(H.order):
            c = G.conj(g, embedding.table[x])
            if c not in lookup:
                raise GroupError("image of the embedding is not a normal subgroup")
            row.append(lookup[c])
        table.append(row)
    return GroupAction(G, H, table)


class SplitExtension:
    """Kernel embedding k, retraction p, section s with p s = id.

    The kernel of p must equal the image of k elementwise.
    """

    def __init__(self, k: GroupHom, p: GroupHom, s: GroupHom, *, check: bool = True):
        self.k = k
        self.p = p
        self.s = s
        if check:
            self._validate()

    @property
    def kernel_group(self) -> FiniteGroup:
        return self.k.source

    @property
    def total(self) -> FiniteGroup:
        return self.p.source

    @property
    def base(self) -> FiniteGroup:
        return self.p.target

    def _validate(self):
        k, p, s = self.k, self.p, self.s
        if k.target is not p.source:
            raise GroupError("kernel embedding must land in the total group")
        if s.source is not p.target or s.target is not p.source:
            raise GroupError("section must go from the base into the total group")
        if not k.is_injective():
            raise GroupError("kernel embedding is not injective")
        for g in range(p.target.order):
            if p.table[s.table[g]] != g:
                raise GroupError("section is not split by the retraction")
        if p.kernel_elements != k.image_elements:
            raise GroupError("kernel of the retraction differs from the embedded subgroup")

    def __repr__(self):
        return (f"SplitExtension({self.kernel_group.order} -> {self.total.order} "
                f"-> {self.base.order})")


def semidirect_product(action: GroupAction) -> SplitExtension:
    """Split extension with pair multiplication (x1,g1)(x2,g2) = (x1 g1.x2, g1 g2)."""
    X, G = action.carrier, action.actor
    n, m = X.order, G.order
    act = action.table
    mulX, mulG = X.table, G.table
    size = n * m
    table = [[0] * size for _ in range(size)]
    for x1 in range(n):
        for g1 in range(m):
            row = table[x1 * m + g1]
            actg1 = act[g1]
            mx1 = mulX[x1]
            mg1 = mulG[g1]
            for x2 in range(n):
                base = mx1[actg1[x2]] * m
                for g2 in range(m):
                    row[x2 * m + g2] = base + mg1[g2]
    names = [f"{X.names[x]}|{G.names[g]}" for x in range(n) for g in range(m)]
    E = FiniteGroup(table, names=names, label=f"{X.label}:{G.label}")
    k = GroupHom(X, E, tuple(x * m + G.identity for x in range(n)), check=False)
    p = GroupHom(E, G, tuple(e % m for e in range(size)), check=False)
    s = GroupHom(G, E, tuple(X.identity * m + g for g in range(m)), check=False)
    return SplitExtension(k, p, s)


def action_from_extension(ext: SplitExtension) -> GroupAction:
    """Conjugation of the section through the kernel embedding."""
    k, s = ext.k, ext.s
    E = ext.total
    lookup = {k.table[x]: x for x in range(ext.kernel_group.order)}
    table = []
    for g in range(ext.base.order):
        sg = s.table[g]
        row = []
        for x in range(ext.kernel_group.order):
            c = E.conj(sg, k.table[x])
            if c not in lookup:
                raise GroupError("conjugate left the embedded kernel")
            row.append(lookup[c])
        table.append(row)
    return GroupAction(ext.base, ext.kernel_group, table)


def canonical_extension(action: GroupAction) -> SplitExtension:
    return semidirect_product(action)


def extension_iso(ext: SplitExtension) -> GroupHom:
    """Isomorphism from the semidirect product of the derived action onto the total group.

    Sends a pair (x, g) to k(x) s(g) and checks compatibility with the kernel
    embeddings, retractions, and sections on both sides.
    """
    action = action_from_extension(ext)
    std = semidirect_product(action)
    E = ext.total
    m = ext.base.order
    images = []
    for a in range(std.total.order):
        x, g = divmod(a, m)
        images.append(E.mul(ext.k.table[x], ext.s.table[g]))
    iso = GroupHom(std.total, E, tuple(images))
    if not iso.is_injective() or not iso.is_surjective():
        raise GroupError("comparison map is not bijective")
    for x in range(ext.kernel_group.order):
        if iso.table[std.k.table[x]] != ext.k.table[x]:
            raise GroupError("comparison map does not commute with the kernel embeddings")
    for g in range(ext.base.order):
        if iso.table[std.s.table[g]] != ext.s.table[g]:
            raise GroupError("comparison map does not commute with the sections")
    for a in range(std.total.order):
        if ext.p.table[iso.table[a]] != std.p.table[a]:
            raise GroupError("comparison map does not commute with the retractions")
    return iso


def action_signature(action: GroupAction) -> FactorSignature:
    return FactorSignature((action.actor, action.carrier))


def _check_action_word(action: GroupAction, w):
    facs = w.sig.factors
    if len(facs) != 2 or facs[0] is not action.actor or facs[1] is not action.carrier:
        raise GroupError("word signature must be (actor, carrier) for this action")


def action_core_word(action: GroupAction, w) -> int:
    """Evaluate a word with trivial actor projection to a carrier element.

    Walks the letters once, twisting each carrier letter by the actor prefix;
    the running actor product must return to the identity.
    """
    _check_action_word(action, w)
    G, X = action.actor, action.carrier
    act = action.table
    a = G.identity
    r = X.identity
    for slot, v in w.letters:
        if slot == 0:
            a = G.mul(a, v)
        else:
            r = X.mul(r, act[a][v])
    if a != G.identity:
        raise GroupError("word does not project trivially to the actor")
    return r


def action_core_eval(action: GroupAction, w) -> int:
    """Evaluate through the semidirect product and pull back along the kernel.

    Independent of `action_core_word`; both must agree on every word with
    trivial actor projection.
    """
    _check_action_word(action, w)
    ext = semidirect_product(action)
    wh = WordHom(w.sig, [ext.s, ext.k], ext.total)
    e = evaluate(w, wh)
    if ext.p.table[e] != ext.base.identity:
        raise GroupError("word does not project trivially to the actor")
    lookup = {ext.k.table[x]: x for x in range(action.carrier.order)}
    return lookup[e]


def action_core_consistency(action: GroupAction, max_len: int = 4) -> int:
    """Compare both evaluation routes on every short word with trivial actor part.

    Returns the number of words checked.  Uses the flat-word enumeration, which
    contains the binary cosmash words as a subset.
    """
    from .words import enumerate_flat_words

    sig = action_signature(action)
    ext = semidirect_product(action)
    wh = WordHom(sig, [ext.s, ext.k], ext.total)
    lookup = {ext.k.table[x]: x for x in range(action.carrier.order)}
    count = 0
    for w in enumerate_flat_words(sig, max_len):
        via_ext = lookup[evaluate(w, wh)]
        via_word = action_core_word(action, w)
        if via_ext != via_word:
            raise GroupError(f"evaluation routes disagree on {w!r}")
        count += 1
    return count
