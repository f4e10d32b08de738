#!/usr/bin/env python3
"""Layers of a toric arrangement, computed by exact lattice arithmetic.

The reference arrangement lives in a three-dimensional torus with
coordinates x, y, z and consists of the hypertorus a: x = 1, the
hypertorus b: x = y^3, and the curve c: x = z, x^2 = y^3.  Intersecting
a and b forces y^3 = 1, so their intersection has three connected
components, one per cube root of unity; this is where exact phase
arithmetic earns its keep.
"""

from fractions import Fraction

from wondertoric import Layer, intersect_layers, poset_of_layers
from wondertoric.fixtures import running_arrangement, running_named_layers

arrangement = running_arrangement()
named = running_named_layers()
rev = {v: k for k, v in named.items()}

print("subtori:")
for name, layer in arrangement.alias_map().items():
    print(f"  {name}: characters {layer.lattice.basis}, phase {layer.phase}")

a, b = named["a"], named["b"]
print("\ncomponents of the intersection of a and b:")
for comp in intersect_layers(a, b):
    print(f"  {rev[comp]}: lattice {comp.lattice.basis}, phase {comp.phase}")

poset = poset_of_layers(arrangement)
print(f"\nthe poset of layers has {len(poset)} elements")
print("cover relations:")
for x, y in sorted(poset.covers(), key=lambda t: (rev[t[0]], rev[t[1]])):
    print(f"  {rev[x]} < {rev[y]}")

print("\na custom layer with a half phase:")
k = Layer.make(2, [[1, 1]], [Fraction(1, 2)])
print(f"  {k.name} has rank {k.rank}")
