"""Admissible monomials, the additive basis, and deletion-contraction checks.

A chain monomial lives on a chain of nested sets; its induced function
adds the exponents of the chain elements containing each building-set
member.  Admissibility bounds that function by rank differences inside
the base poset, and the admissible monomials paired with monomial bases
of the restricted toric rings enumerate an additive basis of the model's
cohomology.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .polyring import Monomial, Polynomial


@dataclass(frozen=True)
class AdmissibleFunction:
    """Values of a chain monomial on the building set, with its source chain."""

    support: frozenset
    values: tuple  # (member, value) pairs, deterministic order
    chain: tuple   # blowup labels, increasing
    exps: tuple

    def value(self, member) -> int:
        for m, v in self.values:
            if m == member:
                return v
        return 0


@dataclass(frozen=True)
class AMItem:
    chain: tuple
    exps: tuple
    degree: int


def monomial_to_function(pres, chain, exps) -> AdmissibleFunction:
    """Induced function of a chain monomial; errors off-chain."""
    bl = pres.bl
    chain = tuple(chain)
    exps = tuple(int(e) for e in exps)
    if len(chain) != len(exps) or any(e < 1 for e in exps):
        raise ValueError("one positive exponent per chain element")
    for a, b in zip(chain, chain[1:]):
        if not bl.poset.lt(a, b):
            raise ValueError("labels do not form an increasing chain")
    if not chain:
        return AdmissibleFunction(frozenset(), (), (), ())
    values: dict = {}
    for label, e in zip(chain, exps):
        for member in bl.nested(label).members:
            values[member] = values.get(member, 0) + e
    support = bl.nested(chain[-1]).members
    ordered = tuple(sorted(values.items(),
                           key=lambda kv: bl.member_pos[kv[0]]))
    return AdmissibleFunction(frozenset(support), ordered, chain, exps)


def is_admissible(pres, chain, exps) -> bool:
    """Each member's value stays under its rank gap inside the top stratum."""
    f = monomial_to_function(pres, chain, exps)
    if not f.chain:
        return True
    poset = pres.poset
    top = pres.bl.nested(f.chain[-1])
    for g in top.members:
        below = [h for h in top.members if poset.lt(h, g)]
        m = poset.join_in_interval(below, g)
        if m is None:
            raise AssertionError("join of smaller members missing below a member")
        if f.value(g) >= poset.rank(g) - poset.rank(m):
            return False
    return True


def _chains(pres):
    blp = pres.bl.poset
    nonzero = [x for x in blp.labels if x != blp.zero]

    def extend(chain):
        yield tuple(chain)
        last = chain[-1]
        for x in nonzero:
            if blp.lt(last, x):
                yield from extend(chain + [x])

    for x in nonzero:
        yield from extend([x])


def enumerate_am(pres) -> list[AMItem]:
    """All admissible monomials, including 1, in canonical order."""
    blp = pres.bl.poset
    max_rank = max(pres.poset.rank(x) for x in pres.poset.labels)
    out = [AMItem((), (), 0)]
    for chain in _chains(pres):
        weights = [blp.rank(a) for a in chain]
        for exps in itertools.product(range(1, max_rank + 1), repeat=len(chain)):
            if is_admissible(pres, chain, exps):
                out.append(AMItem(chain, exps,
                                  sum(w * e for w, e in zip(weights, exps))))
    out.sort(key=lambda it: (it.degree, it.chain, it.exps))
    return out


def am_monomial(pres, item: AMItem) -> Monomial:
    mono = pres.table.one()
    for label, e in zip(item.chain, item.exps):
        var = pres.table.variable(("t", label), e)
        mono = pres.table.mono_mul(mono, var)
    return mono


def enumerate_b(pres) -> list[tuple[Monomial, int]]:
    """The additive basis: admissible monomials times restricted escaliers."""
    out = []
    for item in enumerate_am(pres):
        layer = pres.bl.pi[item.chain[-1]] if item.chain else pres.poset.zero
        gb, positions = pres.restricted_gb(layer)
        if gb.torsion_suspect:
            raise AssertionError("restricted toric basis has non-unit leads")
        base = am_monomial(pres, item)
        d = 0
        while True:
            std = gb.standard_monomials(d, positions)
            if not std:
                break
            for b in std:
                out.append((pres.table.mono_mul(base, b), item.degree + d))
            d += 1
    out.sort(key=lambda t: (t[1], pres.table.mono_key(t[0])))
    return out


def generating_function(degrees) -> list[int]:
    """Coefficient list of the degree histogram."""
    degrees = list(degrees)
    if not degrees:
        return [0]
    out = [0] * (max(degrees) + 1)
    for d in degrees:
        out[d] += 1
    return out


def am_generating_function(pres) -> list[int]:
    return generating_function(it.degree for it in enumerate_am(pres))


def b_generating_function(pres) -> list[int]:
    return generating_function(d for _, d in enumerate_b(pres))


def basis_degree_counts(pres, up_to: int) -> list[int]:
    counts = b_generating_function(pres)
    if len(counts) < up_to + 1:
        counts = counts + [0] * (up_to + 1 - len(counts))
    return counts


@dataclass
class RecursionReport:
    which: str
    last_name: str
    codim: int
    lhs: list[int]
    deleted: list[int]
    contracted: list[int]
    rhs: list[int]

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


def _poly_add(a: list[int], b: list[int]) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += c
    while out and out[-1] == 0:
        out.pop()
    return out


def check_recursion(pres, which: str = "AM") -> RecursionReport:
    """Deletion-contraction identity for the generating function.

    Both sides are enumerated independently: the left on the model, the
    right on the deleted model plus (y + ... + y^(d-1)) times the
    contracted one, d the rank of the last member.
    """
    gen = am_generating_function if which == "AM" else b_generating_function
    last = pres.building.last
    d = pres.poset.rank(last)
    lhs = gen(pres)
    deleted = gen(pres.delete_last())
    contracted = gen(pres.contract_last())
    rhs = list(deleted)
    for shift in range(1, d):
        rhs = _poly_add(rhs, [0] * shift + contracted)
    lhs = _poly_add(lhs, [])
    return RecursionReport(which, pres.layer_name(last), d,
                           lhs, _poly_add(deleted, []),
                           _poly_add(contracted, []), rhs)


def peel_down(pres, which: str = "AM") -> list[RecursionReport]:
    """Recursion reports for every deletion step down to the empty set."""
    out = []
    current = pres
    while len(current.building) > 0:
        out.append(check_recursion(current, which))
        current = current.delete_last()
    return out


def flag_decomposition(pres, mono: Monomial) -> Polynomial:
    """Rewrite along incomparable pairs until every monomial is a flag.

    Each rewriting step replaces a product of two incomparable blowup
    variables by meet times the sum over the joins (dropping the term when
    the join is empty); the count of incomparable pairs strictly drops, so
    this terminates.
    """
    table = pres.table
    blp = pres.bl.poset
    t_positions = [i for i, k in enumerate(table.keys) if k[0] == "t"]
    result = Polynomial({})
    stack = [(1, mono)]
    while stack:
        coeff, m = stack.pop()
        pair = None
        present = [i for i in t_positions if m[i]]
        for i, j in itertools.combinations(present, 2):
            a, b = table.keys[i][1], table.keys[j][1]
            if not blp.leq(a, b) and not blp.leq(b, a):
                pair = (i, j, a, b)
                break
        if pair is None:
            result = result + table.term(coeff, m)
            continue
        i, j, a, b = pair
        base = list(m)
        base[i] -= 1
        base[j] -= 1
        joins = blp.joins(a, b)
        if not joins:
            continue
        meets = blp.meets(a, b)
        assert len(meets) == 1
        meet = meets[0]
        if meet != blp.zero:
            base[table.position[("t", meet)]] += 1
        for c in joins:
            nxt = list(base)
            nxt[table.position[("t", c)]] += 1
            stack.append((coeff, tuple(nxt)))
    return result
