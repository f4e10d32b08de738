"""Ranked posets, building sets, nested sets and combinatorial blowups.

Posets here are finite, come with a minimum and a monotone rank function,
and joins/meets are *sets* of minimal upper (maximal lower) bounds, since
least upper bounds need not exist.  A poset is a local lattice when every
lower interval is a lattice; that is the class all the heavier machinery
(building sets, nested sets, blowups) operates on.

Elements are arbitrary hashable labels.  The order is stored as one
bitmask per element, which keeps all the interval computations cheap at
the scales this package targets (tens of elements).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


class RankedPoset:
    """Finite poset with minimum and a monotone rank function."""

    __slots__ = ("labels", "index", "rank_list", "_up", "_down", "n", "zero")

    def __init__(self, labels, ranks, leq_pairs):
        """Build from explicit order pairs (reflexive closure is implied).

        ``leq_pairs`` is an iterable of (x, y) with x <= y; use
        :meth:`from_covers` when only cover relations are known.
        """
        self.labels = tuple(labels)
        self.n = len(self.labels)
        self.index = {x: i for i, x in enumerate(self.labels)}
        if len(self.index) != self.n:
            raise ValueError("duplicate labels")
        self.rank_list = tuple(int(ranks[x]) for x in self.labels)
        up = [1 << i for i in range(self.n)]
        for x, y in leq_pairs:
            up[self.index[x]] |= 1 << self.index[y]
        # transitive closure (iterate to fixpoint; n is small)
        changed = True
        while changed:
            changed = False
            for i in range(self.n):
                acc = up[i]
                m = acc
                while m:
                    j = (m & -m).bit_length() - 1
                    m &= m - 1
                    acc |= up[j]
                if acc != up[i]:
                    up[i] = acc
                    changed = True
        self._up = up
        down = [0] * self.n
        for i in range(self.n):
            m = up[i]
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                down[j] |= 1 << i
        self._down = down
        for i in range(self.n):
            for j in range(self.n):
                if i != j and (up[i] >> j) & 1 and (up[j] >> i) & 1:
                    raise ValueError("order is not antisymmetric")
        minima = [i for i in range(self.n) if down[i] == 1 << i]
        if len(minima) != 1:
            raise ValueError("poset must have a unique minimum")
        self.zero = self.labels[minima[0]]
        z = minima[0]
        if self.rank_list[z] != 0:
            raise ValueError("minimum must have rank 0")
        for i in range(self.n):
            m = self._up[i]
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                if self.rank_list[j] < self.rank_list[i]:
                    raise ValueError("rank function is not monotone")

    @classmethod
    def from_covers(cls, labels, ranks, covers):
        return cls(labels, ranks, covers)

    # -- basic queries -------------------------------------------------

    def rank(self, x) -> int:
        return self.rank_list[self.index[x]]

    def leq(self, x, y) -> bool:
        return (self._up[self.index[x]] >> self.index[y]) & 1 == 1

    def lt(self, x, y) -> bool:
        return x != y and self.leq(x, y)

    def _members(self, mask) -> list:
        out = []
        while mask:
            j = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            out.append(self.labels[j])
        return out

    def up_mask(self, x) -> int:
        return self._up[self.index[x]]

    def down_mask(self, x) -> int:
        return self._down[self.index[x]]

    def upset(self, x) -> list:
        return self._members(self._up[self.index[x]])

    def downset(self, x) -> list:
        return self._members(self._down[self.index[x]])

    def maximal_elements(self) -> list:
        return [x for i, x in enumerate(self.labels) if self._up[i] == 1 << i]

    def covers(self) -> list[tuple]:
        """All cover pairs (x, y) with x covered by y."""
        out = []
        for i in range(self.n):
            strict = self._up[i] & ~(1 << i)
            m = strict
            while m:
                j = (m & -m).bit_length() - 1
                m &= m - 1
                if not (strict & self._down[j] & ~(1 << j)):
                    out.append((self.labels[i], self.labels[j]))
        return out

    def covers_above(self, x) -> list:
        i = self.index[x]
        strict = self._up[i] & ~(1 << i)
        out = []
        m = strict
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if not (strict & self._down[j] & ~(1 << j)):
                out.append(self.labels[j])
        return out

    def _minimal(self, mask) -> list:
        out = []
        m = mask
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if mask & self._down[j] == 1 << j:
                out.append(self.labels[j])
        return out

    def _maximal(self, mask) -> list:
        out = []
        m = mask
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if mask & self._up[j] == 1 << j:
                out.append(self.labels[j])
        return out

    # -- joins and meets ----------------------------------------------

    def joins(self, x, y) -> list:
        """All minimal upper bounds of x and y (possibly empty)."""
        return self._minimal(self._up[self.index[x]] & self._up[self.index[y]])

    def meets(self, x, y) -> list:
        """All maximal lower bounds of x and y (nonempty: there is a minimum)."""
        return self._maximal(self._down[self.index[x]] & self._down[self.index[y]])

    def join_set(self, elems, within=None) -> list:
        """Minimal upper bounds of a set, optionally inside a lower interval.

        ``within`` is an element z; bounds are then searched in [0, z].
        """
        mask = (1 << self.n) - 1 if within is None else self._down[self.index[within]]
        for e in elems:
            mask &= self._up[self.index[e]]
        return self._minimal(mask)

    def join_in_interval(self, elems, top):
        """The join of ``elems`` inside the lattice [0, top]; None if absent."""
        ub = self.join_set(elems, within=top)
        if len(ub) == 1:
            return ub[0]
        if not elems:
            return self.zero
        return None

    def restrict(self, keep, rank_offset: int = 0) -> "RankedPoset":
        keep = list(keep)
        keep_set = set(keep)
        ranks = {x: self.rank(x) - rank_offset for x in keep}
        pairs = [
            (x, y) for x in keep for y in keep_set if self.leq(x, y)
        ]
        return RankedPoset(keep, ranks, pairs)

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"RankedPoset({self.n} elements, zero={self.zero!r})"


def is_local_lattice(p: RankedPoset) -> bool:
    """True iff every lower interval has unique pairwise joins and meets."""
    for z in range(p.n):
        elems = p._members(p._down[z])
        for x, y in itertools.combinations(elems, 2):
            ub = p._up[p.index[x]] & p._up[p.index[y]] & p._down[z]
            if len(p._minimal(ub)) != 1:
                return False
            lb = p._down[p.index[x]] & p._down[p.index[y]]
            if len(p._maximal(lb)) != 1:
                return False
    return True


# -- building sets --------------------------------------------------------


@dataclass(frozen=True)
class BuildingSet:
    """A building set together with a fixed linear order.

    ``order`` lists the members so that earlier elements are never smaller
    in the poset (a linear refinement of the opposite partial order); the
    last element is therefore minimal among the members.
    """

    members: frozenset
    order: tuple

    def __post_init__(self):
        if frozenset(self.order) != self.members or len(self.order) != len(self.members):
            raise ValueError("order must enumerate the members exactly once")

    def __len__(self):
        return len(self.order)

    @property
    def last(self):
        return self.order[-1]


def default_order(p: RankedPoset, members) -> tuple:
    """Deterministic linear refinement of the opposite partial order.

    Greedy topological sort picking, at each step, the first maximal
    remaining element under (decreasing rank, decreasing label key).
    """
    pending = sorted(members, key=_label_sort_key, reverse=True)
    pending.sort(key=lambda x: -p.rank(x))
    out = []
    while pending:
        for i, x in enumerate(pending):
            if not any(p.lt(x, y) for y in pending if y is not x):
                out.append(pending.pop(i))
                break
        else:  # pragma: no cover - partial orders always have maximal elements
            raise RuntimeError("cyclic order")
    return tuple(out)


def _label_sort_key(x):
    key = getattr(x, "sort_key", None)
    if key is not None:
        return (0, key() if callable(key) else key)
    return (1, repr(x))


def make_building_set(p: RankedPoset, members, order=None) -> BuildingSet:
    members = frozenset(members)
    if order is None:
        order = default_order(p, members)
    order = tuple(order)
    for i, x in enumerate(order):
        for y in order[i + 1:]:
            if p.lt(x, y):
                raise ValueError("order does not refine the opposite partial order")
    return BuildingSet(members, order)


def g_factors(p: RankedPoset, members, x) -> set:
    """Maximal building-set members below-or-equal x."""
    if x == p.zero:
        raise ValueError("factors are defined for elements above the minimum")
    below = [g for g in members if p.leq(g, x)]
    return {
        g for g in below if not any(p.lt(g, h) for h in below)
    }


def _interval_product_iso(p: RankedPoset, factors, x) -> bool:
    """Check that joining gives an isomorphism prod [0,x_j] -> [0,x]."""
    factors = list(factors)
    intervals = [p.downset(f) for f in factors]
    size = 1
    for iv in intervals:
        size *= len(iv)
    target = p.downset(x)
    if size != len(target):
        return False
    image = {}
    for combo in itertools.product(*intervals):
        nonzero = [c for c in combo if c != p.zero]
        j = p.join_in_interval(nonzero, x)
        if j is None:
            return False
        image[combo] = j
    if len(set(image.values())) != size:
        return False
    # order isomorphism: componentwise order must match the interval order
    combos = list(image)
    for a in combos:
        for b in combos:
            comp = all(p.leq(u, v) for u, v in zip(a, b))
            if comp != p.leq(image[a], image[b]):
                return False
    return True


def is_building_set(p: RankedPoset, members, geometric: bool = False) -> bool:
    """Check the interval-factorization property for every element.

    With ``geometric=True`` additionally requires factor ranks to add up.
    """
    members = set(members)
    if p.zero in members:
        return False
    for x in p.labels:
        if x == p.zero:
            continue
        factors = g_factors(p, members, x)
        if not factors:
            return False
        if not _interval_product_iso(p, factors, x):
            return False
        if geometric and sum(p.rank(f) for f in factors) != p.rank(x):
            return False
    return True


def minimal_building_set(p: RankedPoset) -> set:
    """Elements whose lower interval admits no proper product decomposition."""
    out = set()
    for x in p.labels:
        if x == p.zero:
            continue
        proper = [y for y in p.downset(x) if y != p.zero and y != x]
        decomposable = False
        for k in range(2, len(proper) + 1):
            for combo in itertools.combinations(proper, k):
                if any(p.lt(a, b) or p.lt(b, a)
                       for a, b in itertools.combinations(combo, 2)):
                    continue
                size = 1
                for c in combo:
                    size *= len(p.downset(c))
                if size != len(p.downset(x)):
                    continue
                if _interval_product_iso(p, combo, x):
                    decomposable = True
                    break
            if decomposable:
                break
        if not decomposable:
            out.add(x)
    return out


def is_well_connected(p: RankedPoset, members) -> bool:
    """Multi-element joins of members must stay inside the set."""
    members = list(members)
    mset = set(members)
    for k in range(2, len(members) + 1):
        for combo in itertools.combinations(members, k):
            if any(p.lt(a, b) or p.lt(b, a)
                   for a, b in itertools.combinations(combo, 2)):
                continue  # joins of non-antichains reduce to antichain joins
            join = p.join_set(combo)
            if len(join) >= 2 and not set(join) <= mset:
                return False
    return True


def minimal_well_connected(p: RankedPoset, members) -> set:
    """Closure of ``members`` under multi-valued joins.

    Iterates until stable; the result is checked to be a well-connected
    building set.
    """
    current = set(members)
    while True:
        added = set()
        elems = sorted(current, key=_label_sort_key)
        for k in range(2, len(elems) + 1):
            for combo in itertools.combinations(elems, k):
                if any(p.lt(a, b) or p.lt(b, a)
                       for a, b in itertools.combinations(combo, 2)):
                    continue
                join = p.join_set(combo)
                if len(join) >= 2:
                    added |= set(join) - current
        if not added:
            break
        current |= added
    if not is_building_set(p, current):
        raise ValueError("well-connected closure is not a building set")
    if not is_well_connected(p, current):
        raise ValueError("closure failed to become well-connected")
    return current


# -- nested sets and blowups ----------------------------------------------


@dataclass(frozen=True)
class NestedSet:
    """A nested pair (S, x): members of the building set with x in join(S)."""

    members: frozenset
    x: object

    def key(self, member_pos) -> tuple:
        return (tuple(sorted(member_pos[m] for m in self.members)), self.x)

    def __len__(self):
        return len(self.members)


def _is_nested(p: RankedPoset, members_set, s, x) -> bool:
    s = list(s)
    for k in range(2, len(s) + 1):
        for combo in itertools.combinations(s, k):
            if any(p.lt(a, b) or p.lt(b, a)
                   for a, b in itertools.combinations(combo, 2)):
                continue
            j = p.join_in_interval(combo, x)
            if j is None or j in members_set:
                return False
    return True


def nested_sets(p: RankedPoset, building: BuildingSet) -> list[NestedSet]:
    """All nonempty nested pairs (S, x), canonically ordered."""
    member_pos = {g: i for i, g in enumerate(building.order)}
    out = []
    members = list(building.order)
    for k in range(1, len(members) + 1):
        for s in itertools.combinations(members, k):
            sset = frozenset(s)
            for x in p.join_set(s):
                if _is_nested(p, building.members, s, x):
                    out.append(NestedSet(sset, x))
    out.sort(key=lambda ns: (len(ns.members), ns.key(member_pos)[0],
                             _label_sort_key(ns.x)))
    return out


class BlowupPoset:
    """Face poset of the nested-set complex of (L, G).

    Elements are :class:`NestedSet` values plus the empty set as minimum;
    rank is the cardinality of S and ``pi`` projects to the base poset.
    """

    def __init__(self, base: RankedPoset, building: BuildingSet):
        self.base = base
        self.building = building
        member_pos = {g: i for i, g in enumerate(building.order)}
        self.member_pos = member_pos
        nested = nested_sets(base, building)
        self.zero_nested = NestedSet(frozenset(), base.zero)
        all_nested = [self.zero_nested] + nested
        self.nested_by_key = {ns.key(member_pos): ns for ns in all_nested}
        labels = [ns.key(member_pos) for ns in all_nested]
        ranks = {ns.key(member_pos): len(ns.members) for ns in all_nested}
        pairs = []
        for a in all_nested:
            for b in all_nested:
                if a.members < b.members or (a.members == b.members and a.x == b.x):
                    if self._face_leq(a, b):
                        pairs.append((a.key(member_pos), b.key(member_pos)))
        self.poset = RankedPoset(labels, ranks, pairs)
        self.pi = {ns.key(member_pos): ns.x for ns in all_nested}
        # pi must be order-preserving
        for x, y in self.poset.covers():
            if not base.leq(self.pi[x], self.pi[y]):
                raise AssertionError("projection failed to preserve order")

    def _face_leq(self, a: NestedSet, b: NestedSet) -> bool:
        if not a.members <= b.members:
            return False
        j = self.base.join_in_interval(list(a.members), b.x)
        return j == a.x

    @property
    def zero(self):
        return self.poset.zero

    def elements(self):
        return self.poset.labels

    def nested(self, label) -> NestedSet:
        return self.nested_by_key[label]

    def is_locally_boolean(self) -> bool:
        for label in self.poset.labels:
            s = self.nested_by_key[label].members
            down = self.poset.downset(label)
            if len(down) != 1 << len(s):
                return False
            subsets = {self.nested_by_key[d].members for d in down}
            if len(subsets) != len(down):
                return False
        return True


def blowup_building(p: RankedPoset, building: BuildingSet) -> BlowupPoset:
    return BlowupPoset(p, building)


# -- elementary blowups ----------------------------------------------------

_BLOWN = "~bl"


def blowup_at(p: RankedPoset, center) -> tuple[RankedPoset, dict]:
    """Blow up a poset at one element.

    Elements not above the center survive; each pair (x, y) with x not
    above the center and y a minimal upper bound of {center, x} becomes a
    new element labelled ``(_BLOWN, center, x, y)`` of rank rank(x) + 1.
    Returns the new poset and the projection onto the old one.
    """
    if center == p.zero or center not in p.index:
        raise ValueError("center must be an element above the minimum")
    keep = [x for x in p.labels if not p.leq(center, x)]
    new = []
    for x in keep:
        for y in p.joins(center, x):
            new.append((_BLOWN, center, x, y))
    labels = keep + new
    ranks = {x: p.rank(x) for x in keep}
    for t in new:
        ranks[t] = p.rank(t[2]) + 1
    pairs = []
    for x in keep:
        for y in keep:
            if p.leq(x, y):
                pairs.append((x, y))
    for t in new:
        _, _, tx, ty = t
        for x in keep:
            if p.leq(x, tx):
                pairs.append((x, t))
        for s in new:
            if p.leq(s[2], tx) and p.leq(s[3], ty):
                pairs.append((s, t))
    proj = {x: x for x in keep}
    for t in new:
        proj[t] = t[3]
    return RankedPoset(labels, ranks, pairs), proj


def iterated_blowup(p: RankedPoset, centers) -> tuple[RankedPoset, dict]:
    """Blow up along ``centers`` in the given order.

    Returns the final poset together with a decoding of every element as a
    pair (set of centers accumulated, projection to the original poset);
    for orders refining the opposite partial order on a building set this
    decoding identifies the result with the nested-set face poset.
    """
    current = p
    decode = {x: (frozenset(), x) for x in p.labels}
    for c in centers:
        if c not in current.index:
            raise ValueError(f"center {c!r} was removed by an earlier blowup")
        nxt, proj = blowup_at(current, c)
        new_decode = {}
        for lab in nxt.labels:
            if isinstance(lab, tuple) and len(lab) == 4 and lab[0] == _BLOWN and lab[1] == c:
                _, _, x, y = lab
                new_decode[lab] = (decode[x][0] | {c}, decode[y][1])
            else:
                new_decode[lab] = decode[lab]
        current, decode = nxt, new_decode
    return current, decode


# -- deletion and contraction ----------------------------------------------


def deletion(p: RankedPoset, building: BuildingSet,
             member=None) -> tuple[RankedPoset, BuildingSet]:
    """Remove a member (the last one by default): keep elements it does not factor."""
    if member is None:
        member = building.last
    if member not in building.members:
        raise ValueError("can only delete a member of the building set")
    keep = [x for x in p.labels
            if x == p.zero or member not in g_factors(p, building.members, x)]
    sub = p.restrict(keep)
    new = BuildingSet(building.members - {member},
                      tuple(g for g in building.order if g != member))
    return sub, new


def contraction(p: RankedPoset, building: BuildingSet, x) -> tuple[RankedPoset, BuildingSet]:
    """Restrict to the upset of x, with ranks shifted down by rank(x).

    The induced building set consists of the joins with x of members not
    below x.
    """
    if x not in p.index or x == p.zero:
        raise ValueError("contraction requires an element above the minimum")
    upper = p.restrict(p.upset(x), rank_offset=p.rank(x))
    new_members = set()
    for g in building.members:
        if not p.leq(g, x):
            new_members |= set(p.joins(g, x))
    order = default_order(upper, new_members)
    return upper, BuildingSet(frozenset(new_members), order)


def contraction_iso(p: RankedPoset, building: BuildingSet, bl: BlowupPoset,
                    s_nested: NestedSet,
                    bl_contracted: BlowupPoset) -> dict:
    """Explicit bijection Bl(L) above (S, X)  ->  Bl(L at X) for maximal (S, X).

    Maps (T, Y) to (T', Y) where T' collects, for each member t of T not
    below X, the unique element of join(t, X) under Y.  The returned dict
    sends labels of ``bl`` at or above (S, X) to labels of
    ``bl_contracted``; inverse consistency and order preservation are
    checked.
    """
    x = s_nested.x
    s_key = s_nested.key(bl.member_pos)
    fwd = {}
    for label in bl.poset.upset(s_key):
        t = bl.nested(label)
        image_members = set()
        for m in t.members:
            if p.leq(m, x):
                continue
            cands = [z for z in p.joins(m, x) if p.leq(z, t.x)]
            if len(cands) != 1:
                raise AssertionError("join with the center is not unique under Y")
            image_members.add(cands[0])
        img = NestedSet(frozenset(image_members), t.x)
        fwd[label] = img.key(bl_contracted.member_pos)
    if set(fwd.values()) != set(bl_contracted.poset.labels):
        raise AssertionError("contraction map is not onto the contracted blowup")
    if len(set(fwd.values())) != len(fwd):
        raise AssertionError("contraction map is not injective")
    for a in fwd:
        for b in fwd:
            if bl.poset.leq(a, b) != bl_contracted.poset.leq(fwd[a], fwd[b]):
                raise AssertionError("contraction map is not an order isomorphism")
    return fwd


def linear_refinements(p: RankedPoset, members, count: int) -> list[tuple]:
    """Up to ``count`` distinct linear refinements of the opposite order."""
    members = sorted(members, key=_label_sort_key)
    out = []

    def backtrack(remaining, acc):
        if len(out) >= count:
            return
        if not remaining:
            out.append(tuple(acc))
            return
        for i, x in enumerate(remaining):
            if not any(p.lt(x, y) for y in remaining if y is not x):
                backtrack(remaining[:i] + remaining[i + 1:], acc + [x])
                if len(out) >= count:
                    return

    backtrack(members, [])
    return out
