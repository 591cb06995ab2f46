"""Reduced words in free products of finite groups.

Free products, cosmash products and flat objects are infinite, so they are
never materialized: everything is an evaluator over reduced words.  A word is
a sequence of letters (slot, value) with no identity letters and no two
adjacent letters in the same slot.  Slots are positions in a signature; the
same group may occupy several slots and the slots stay distinct.

A slot may also carry a whole signature (a free product used as a single
factor); its letter values are then themselves words.  That is what the
regrouping map produces, and the reduction rules are uniform.
"""
from __future__ import annotations

from .errors import GroupError
from .groups import FiniteGroup, GroupHom

MAX_ENUM_LEN = 12


class FactorSignature:
    """An ordered list of factors, each a FiniteGroup or a nested signature."""

    def __init__(self, factors):
        factors = tuple(factors)
        if not factors:
            raise GroupError("signature needs at least one factor")
        for f in factors:
            if not isinstance(f, (FiniteGroup, FactorSignature)):
                raise GroupError("factors must be groups or signatures")
        self.factors = factors

    def __len__(self):
        return len(self.factors)

    def identity_in(self, i):
        f = self.factors[i]
        return f.identity if isinstance(f, FiniteGroup) else Word(f, ())

    def is_identity_in(self, i, v):
        f = self.factors[i]
        if isinstance(f, FiniteGroup):
            return v == f.identity
        return len(v.letters) == 0

    def mul_in(self, i, x, y):
        f = self.factors[i]
        if isinstance(f, FiniteGroup):
            return f.table[x][y]
        return x * y

    def inv_in(self, i, x):
        f = self.factors[i]
        if isinstance(f, FiniteGroup):
            return f.inv(x)
        return x.inverse()

    def __eq__(self, other):
        # structural: same group objects in the same slots
        return isinstance(other, FactorSignature) and self.factors == other.factors

    def __hash__(self):
        return hash(tuple(id(f) if isinstance(f, FiniteGroup) else f
                          for f in self.factors))

    def __repr__(self):
        parts = []
        for f in self.factors:
            parts.append(f.label if isinstance(f, FiniteGroup) else repr(f))
        return "<" + " + ".join(parts) + ">"


class Word:
    """A reduced word; construct through `word` or `normalize`, not directly."""

    __slots__ = ("sig", "letters")

    def __init__(self, sig, letters):
        self.sig = sig
        self.letters = letters

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other):
        if other.sig is not self.sig and other.sig.factors != self.sig.factors:
            raise GroupError("cannot multiply words over different signatures")
        return normalize(self.sig, self.letters + other.letters)

    def inverse(self):
        sig = self.sig
        return Word(sig, tuple((s, sig.inv_in(s, v)) for s, v in reversed(self.letters)))

    def __eq__(self, other):
        return (isinstance(other, Word) and self.sig.factors == other.sig.factors
                and self.letters == other.letters)

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return format_word(self)


def normalize(sig, letters):
    """Stack reduction: drop identities, merge same-slot neighbours, cancel."""
    out = []
    for s, v in letters:
        if sig.is_identity_in(s, v):
            continue
        if out and out[-1][0] == s:
            merged = sig.mul_in(s, out[-1][1], v)
            out.pop()
            if not sig.is_identity_in(s, merged):
                out.append((s, merged))
        else:
            out.append((s, v))
    return Word(sig, tuple(out))


def word(sig, letters):
    return normalize(sig, letters)


def empty_word(sig):
    return Word(sig, ())


def single(sig, slot, value):
    return normalize(sig, ((slot, value),))


def commutator(u, v):
    return u * v * u.inverse() * v.inverse()


def format_word(w):
    if not w.letters:
        return "()"
    parts = []
    for s, v in w.letters:
        f = w.sig.factors[s]
        if isinstance(f, FiniteGroup):
            parts.append(f"{s}:{f.names[v]}")
        else:
            parts.append(f"{s}:{format_word(v)}")
    return "(" + " ".join(parts) + ")"


def parse_word(sig, text):
    """Inverse of format_word for plain group slots: "(0:a 1:x 0:a^-1)".

    A trailing ^-1 on a name inverts the element.
    """
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise GroupError("word must be wrapped in parentheses")
    body = text[1:-1].strip()
    letters = []
    if body:
        for tok in body.split():
            if ":" not in tok:
                raise GroupError(f"bad letter {tok!r}: expected slot:name")
            si, name = tok.split(":", 1)
            try:
                slot = int(si)
            except ValueError:
                raise GroupError(f"bad slot in {tok!r}") from None
            if not 0 <= slot < len(sig):
                raise GroupError(f"slot {slot} out of range")
            f = sig.factors[slot]
            if not isinstance(f, FiniteGroup):
                raise GroupError("can only parse letters in plain group slots")
            invert = name.endswith("^-1")
            if invert:
                name = name[:-3]
            v = f.index_of(name)
            if invert:
                v = f.inv(v)
            letters.append((slot, v))
    return normalize(sig, letters)


class WordHom:
    """Slot-wise homomorphisms into one common target; evaluates words there."""

    def __init__(self, sig, maps, target):
        maps = tuple(maps)
        if len(maps) != len(sig):
            raise GroupError("need one map per slot")
        for i, m in enumerate(maps):
            if not isinstance(m, GroupHom) or m.target is not target:
                raise GroupError("slot maps must be homs into the common target")
            if m.source is not sig.factors[i]:
                raise GroupError(f"slot {i} map source does not match the factor")
        self.sig = sig
        self.maps = maps
        self.target = target

    def evaluate(self, w):
        out = self.target.identity
        mul = self.target.mul
        for s, v in w.letters:
            out = mul(out, self.maps[s].table[v])
        return out


def evaluate(w, word_hom):
    return word_hom.evaluate(w)


def map_word(w, tgt_sig, value_maps):
    """Apply one value map per slot, keeping the slot structure; renormalizes."""
    return normalize(tgt_sig, tuple((s, value_maps[s](v)) for s, v in w.letters))


def fold_word(w, tgt_sig, slot_map, value_maps=None):
    """Send slot i to slot_map[i] (None deletes it), mapping values; renormalizes.

    Deleting a slot is the induced map that kills that factor; merging slots is
    the induced copairing.  Always a homomorphism on the free product.
    """
    letters = []
    for s, v in w.letters:
        t = slot_map[s]
        if t is None:
            continue
        letters.append((t, value_maps[s](v) if value_maps else v))
    return normalize(tgt_sig, tuple(letters))


def delete_slot(w, slot):
    """Project away one slot; the remaining slots keep their relative order."""
    k = len(w.sig)
    rest = [f for i, f in enumerate(w.sig.factors) if i != slot]
    tgt = FactorSignature(rest)
    slot_map = []
    j = 0
    for i in range(k):
        if i == slot:
            slot_map.append(None)
        else:
            slot_map.append(j)
            j += 1
    return fold_word(w, tgt, slot_map)


def in_binary_cosmash(w):
    """Both single-slot projections collapse to the empty word."""
    if len(w.sig) != 2:
        raise GroupError("binary membership needs a two-slot signature")
    return (len(delete_slot(w, 0)) == 0) and (len(delete_slot(w, 1)) == 0)


def in_ternary_cosmash(w):
    """All three pairwise projections (delete one slot) collapse to empty."""
    if len(w.sig) != 3:
        raise GroupError("ternary membership needs a three-slot signature")
    return all(len(delete_slot(w, i)) == 0 for i in range(3))


def in_flat(w):
    """Membership in the kernel of (keep slot 0, kill slot 1): A-flat words."""
    if len(w.sig) != 2:
        raise GroupError("flat membership needs a two-slot signature")
    return len(delete_slot(w, 1)) == 0


def _require_same_factor(sig, i, j):
    if sig.factors[i] is not sig.factors[j]:
        raise GroupError(f"slots {i} and {j} must carry the same factor")


def fold_left(w):
    """(A, A, B) -> (A, B): merge the two left slots by multiplication."""
    sig = w.sig
    if len(sig) != 3:
        raise GroupError("fold_left needs three slots")
    _require_same_factor(sig, 0, 1)
    tgt = FactorSignature((sig.factors[0], sig.factors[2]))
    return fold_word(w, tgt, (0, 0, 1))


def fold_right(w):
    """(A, B, B) -> (A, B): merge the two right slots by multiplication."""
    sig = w.sig
    if len(sig) != 3:
        raise GroupError("fold_right needs three slots")
    _require_same_factor(sig, 1, 2)
    tgt = FactorSignature((sig.factors[0], sig.factors[1]))
    return fold_word(w, tgt, (0, 1, 1))


def regroup_first_two(w):
    """(A, B, C) -> (A+B, C): bundle the first two slots into one word-valued slot."""
    sig = w.sig
    if len(sig) != 3:
        raise GroupError("regrouping needs three slots")
    inner = FactorSignature((sig.factors[0], sig.factors[1]))
    tgt = FactorSignature((inner, sig.factors[2]))
    letters = []
    for s, v in w.letters:
        if s == 2:
            letters.append((1, v))
        else:
            letters.append((0, Word(inner, ((s, v),))))
    return normalize(tgt, tuple(letters))


def collapse_regrouped(w, pair_hom, outer_target_sig):
    """Evaluate the word-valued slot of a regrouped word through a WordHom.

    Sends ((A+B), C) to (T, C) where T = pair_hom.target; the inverse shape of
    regroup_first_two composed with a copairing on the bundled slot.
    """
    def first(v):
        return pair_hom.evaluate(v)

    return map_word(w, outer_target_sig, (first, lambda v: v))


# -- enumeration ---------------------------------------------------------------


def _check_enum_args(sig, max_len):
    if max_len > MAX_ENUM_LEN:
        raise GroupError(f"enumeration length {max_len} exceeds cap {MAX_ENUM_LEN}")
    for f in sig.factors:
        if not isinstance(f, FiniteGroup):
            raise GroupError("can only enumerate over plain group slots")


_SLOT_SHIFT = 10
_VAL_MASK = (1 << _SLOT_SHIFT) - 1


def _kernel_words(sig, max_len, keeps):
    """Reduced words of length <= max_len whose kept-slot projections all vanish.

    keeps is a list of slot sets; for each, the projection deleting the other
    slots must normalize to the empty word.  Pruned DFS; per projection stack
    of height h, only letters in its slots can shorten it and by at most one,
    so h must never exceed the compatible remaining-letter count.  A stack
    pinned at exactly its budget whose top slot equals the letter just placed
    is dead: the forced immediate cancellation would break reducedness.
    """
    _check_enum_args(sig, max_len)
    k = len(sig)
    factors = sig.factors
    muls = [f.table for f in factors]
    invs = [f._inv for f in factors]
    idents = [f.identity for f in factors]
    values = [[v for v in range(f.order) if v != f.identity] for f in factors]
    nstacks = len(keeps)
    touch = [tuple(p for p, keep in enumerate(keeps) if s in keep) for s in range(k)]
    untouched = [tuple(p for p in range(nstacks) if p not in touch[s]) for s in range(k)]
    max_touch = max((len(t) for t in touch), default=0) or 1
    stacks = [[] for _ in range(nstacks)]
    out = []
    cur = []
    shift = _SLOT_SHIFT
    mask = _VAL_MASK

    def rec(prev_slot, remaining, total_h):
        if total_h == 0:
            out.append(tuple(cur))
        if remaining == 0:
            return
        r1 = remaining - 1
        sum_cap = max_touch * r1
        for s in range(k):
            if s == prev_slot:
                continue
            ok = True
            for p in untouched[s]:
                if len(stacks[p]) > r1:
                    ok = False
                    break
            if not ok:
                continue
            # classify the touched stacks for this slot
            merge = []      # (stack, top value, forced-cancel flag)
            pushes = []
            blocked = False
            for p in touch[s]:
                st = stacks[p]
                h = len(st)
                if h and (st[-1] >> shift) == s:
                    if h - 1 > r1:
                        blocked = True
                        break
                    # at h >= r1 a non-cancelling merge leaves the top in
                    # slot s at full budget: dead, so the value is forced
                    merge.append((st, st[-1] & mask, h >= r1))
                else:
                    # push puts slot s on top; h+1 == r1 is the dead case
                    if h + 1 >= r1:
                        blocked = True
                        break
                    pushes.append(st)
            if blocked:
                continue
            mul_s = muls[s]
            ident_s = idents[s]
            inv_s = invs[s]
            forced = None
            for _st, top, must in merge:
                if must:
                    need = inv_s[top]
                    if forced is not None and forced != need:
                        forced = -1
                        break
                    forced = need
            if forced == -1:
                continue
            vals = (forced,) if forced is not None else values[s]
            base = total_h + len(pushes)
            for v in vals:
                delta = 0
                bad = False
                new_tops = []
                for st, top, _must in merge:
                    m = mul_s[top][v]
                    if m == ident_s:
                        delta -= 1
                        new_tops.append(None)
                    else:
                        if len(st) > r1:
                            bad = True
                            break
                        new_tops.append(m)
                if bad or base + delta > sum_cap:
                    continue
                packed = (s << shift) | v
                for st in pushes:
                    st.append(packed)
                tops_backup = []
                for (st, top, _must), nt in zip(merge, new_tops):
                    tops_backup.append(st[-1])
                    if nt is None:
                        st.pop()
                    else:
                        st[-1] = (s << shift) | nt
                cur.append((s, v))
                rec(s, r1, base + delta)
                cur.pop()
                for (st, _top, _must), nt, old in zip(merge, new_tops, tops_backup):
                    if nt is None:
                        st.append(old)
                    else:
                        st[-1] = old
                for st in pushes:
                    st.pop()

    rec(-1, max_len, 0)
    out.sort(key=lambda ls: (len(ls), ls))
    return [Word(sig, ls) for ls in out]


def enumerate_words(sig, max_len):
    """All reduced words of length <= max_len, in length-lexicographic order."""
    return _kernel_words(sig, max_len, [])


def enumerate_cosmash_words(sig, max_len):
    """Binary or ternary cosmash members up to max_len, length-lex order."""
    k = len(sig)
    if k == 2:
        keeps = [{0}, {1}]
    elif k == 3:
        keeps = [{0, 1}, {0, 2}, {1, 2}]
    else:
        raise GroupError("cosmash enumeration supports 2 or 3 slots")
    return _kernel_words(sig, max_len, keeps)


def enumerate_flat_words(sig, max_len):
    """Words over (A, X) killed by (keep A, drop X), up to max_len."""
    if len(sig) != 2:
        raise GroupError("flat enumeration needs a two-slot signature")
    return _kernel_words(sig, max_len, [{0}])
