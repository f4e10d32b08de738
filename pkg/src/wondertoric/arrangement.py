"""Toric arrangements and their posets of layers.

A layer is cut out of the torus by a saturated character lattice together
with a phase, i.e. a homomorphism from the lattice to roots of unity.
Phases are stored as rationals modulo one on the canonical (Hermite)
basis of the lattice, which makes layer equality decidable and
hash-stable.  Only torsion phases are supported: component counting and
phase extension then reduce to exact Smith-normal-form arithmetic.  The
data model could be widened to phases in an arbitrary finitely generated
abelian group, but no such input format is implemented.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .intlinalg import Sublattice, is_saturated, snf
from .poset import RankedPoset


def _mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class Layer:
    """A connected subvariety of the torus: saturated lattice plus phase.

    ``phase`` holds one rational modulo 1 per basis row of ``lattice``;
    rank equals the complex codimension of the layer.
    """

    lattice: Sublattice
    phase: tuple[Fraction, ...]

    @staticmethod
    def make(ambient_rank: int, rows, phase_values) -> "Layer":
        """Canonicalize arbitrary (independent) rows and their phases."""
        rows = [tuple(map(int, r)) for r in rows]
        values = [Fraction(v) for v in phase_values]
        if len(rows) != len(values):
            raise ValueError("one phase value per character row is required")
        lat = Sublattice.from_rows(ambient_rank, rows)
        if not is_saturated(lat):
            raise ValueError(
                "character lattice is not saturated; the subvariety it cuts "
                "out is disconnected (split it into layers first)"
            )
        # phases on the HNF basis: each HNF row is an integer combination
        # of the input rows, with coefficients from the HNF transform.
        from .intlinalg import hnf

        h, u = hnf(rows, cols=ambient_rank)
        phases = []
        for i, hrow in enumerate(h):
            if not any(hrow):
                continue
            val = sum((Fraction(c) * w for c, w in zip(u[i], values)), Fraction(0))
            phases.append(_mod1(val))
        return Layer(lat, tuple(phases))

    @staticmethod
    def whole_torus(ambient_rank: int) -> "Layer":
        return Layer(Sublattice.zero(ambient_rank), ())

    @property
    def ambient_rank(self) -> int:
        return self.lattice.ambient_rank

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def phase_of(self, character) -> Fraction | None:
        """Value of the phase on a character of the lattice (None if outside)."""
        coeffs = self.lattice.solve(character)
        if coeffs is None:
            return None
        return _mod1(sum((Fraction(c) * w for c, w in zip(coeffs, self.phase)),
                         Fraction(0)))

    def sort_key(self):
        return (self.rank, self.lattice.basis,
                tuple((v.numerator, v.denominator) for v in self.phase))

    @property
    def name(self) -> str:
        rows = ";".join(",".join(str(x) for x in r) for r in self.lattice.basis)
        phases = ",".join(str(v) for v in self.phase)
        return f"K[{rows}|{phases}]"

    def __repr__(self):
        return self.name


def layer_leq(k1: Layer, k2: Layer) -> bool:
    """Poset order: k1 <= k2 iff the k2 subvariety sits inside k1's.

    Equivalently the lattice of k1 is contained in that of k2 and the
    phases agree on it.
    """
    if k1.ambient_rank != k2.ambient_rank:
        raise ValueError("ambient rank mismatch")
    for row, value in zip(k1.lattice.basis, k1.phase):
        v2 = k2.phase_of(row)
        if v2 is None or v2 != value:
            return False
    return True


def intersect_layers(k1: Layer, k2: Layer) -> list[Layer]:
    """Connected components of the intersection of two layers.

    Empty when the phases are inconsistent on the common lattice;
    otherwise one layer per extension of the combined phase to the
    saturation of the combined lattice, in canonical order.
    """
    if k1.ambient_rank != k2.ambient_rank:
        raise ValueError("ambient rank mismatch")
    n = k1.ambient_rank
    rows = list(k1.lattice.basis) + list(k2.lattice.basis)
    values = list(k1.phase) + list(k2.phase)
    if not rows:
        return [Layer.whole_torus(n)]
    res = snf(rows, transforms=True)
    r = res.rank
    uw = [sum((Fraction(c) * w for c, w in zip(urow, values)), Fraction(0))
          for urow in res.left]
    # rows of U beyond the rank span the relations among the characters;
    # the phase is a well-defined homomorphism iff it kills them.
    for i in range(r, len(rows)):
        if _mod1(uw[i]) != 0:
            return []
    sat_rows = [res.right_inv[i] for i in range(r)]
    d = res.invariant_factors
    choices = []
    for i in range(r):
        base = uw[i] / d[i]
        choices.append([_mod1(base + Fraction(t, d[i])) for t in range(d[i])])
    out = []
    for combo in itertools.product(*choices):
        out.append(Layer.make(n, sat_rows, combo))
    out.sort(key=Layer.sort_key)
    return out


@dataclass(frozen=True)
class ToricArrangement:
    """A finite collection of named subtori (layers of positive rank)."""

    ambient_rank: int
    subtori: tuple[Layer, ...]
    names: tuple[str, ...] = ()

    def __post_init__(self):
        for k in self.subtori:
            if k.ambient_rank != self.ambient_rank:
                raise ValueError("subtorus ambient rank mismatch")
            if k.rank < 1:
                raise ValueError("subtori must have rank at least one")
        if self.names and len(self.names) != len(self.subtori):
            raise ValueError("one name per subtorus")

    def alias_map(self) -> dict[str, Layer]:
        return dict(zip(self.names, self.subtori))


def poset_of_layers(arr: ToricArrangement) -> RankedPoset:
    """Closure of the subtori under pairwise intersection, by reverse inclusion.

    Elements of the returned poset are the :class:`Layer` values
    themselves (the whole torus is the minimum), ranked by codimension.
    """
    zero = Layer.whole_torus(arr.ambient_rank)
    layers = {zero}
    frontier = set()
    for k in arr.subtori:
        if k not in layers:
            layers.add(k)
            frontier.add(k)
    while frontier:
        new = set()
        for a in sorted(layers, key=Layer.sort_key):
            for b in sorted(frontier, key=Layer.sort_key):
                if a is b:
                    continue
                for c in intersect_layers(a, b):
                    if c not in layers and c not in new:
                        new.add(c)
        layers |= new
        frontier = new
    ordered = sorted(layers, key=Layer.sort_key)
    pairs = [
        (a, b) for a in ordered for b in ordered if layer_leq(a, b)
    ]
    ranks = {a: a.rank for a in ordered}
    return RankedPoset(ordered, ranks, pairs)
