#!/usr/bin/env python3
"""Groups, canonical enumerations, and orders of type Z.

Walks through the basic objects: the four built-in groups with their
frozen enumerations, the rho metric they induce, and the two faces of an
order of type Z (windowed and lazy), including the anchored bijection
and order intervals.
"""

from multiorder import OrderWindow, get_group, standard_integer_order

print("=== the groups and their canonical enumerations ===")
for name in ("Z", "Z2", "Z3", "H3"):
    group = get_group(name)
    head = [group.encode(group.enumerate(n)) for n in range(1, 8)]
    print(f"{name:>3} ({group.enumeration_name}): g_1..g_7 = {', '.join(head)}")

H3 = get_group("H3")
a, b = (1, 0, 0), (0, 1, 0)
print("\nHeisenberg is non-abelian:")
print(f"  {a} * {b} = {H3.op(a, b)}")
print(f"  {b} * {a} = {H3.op(b, a)}")
print(f"  inverse of (2,3,1) is {H3.inv((2, 3, 1))}")

Z = get_group("Z")
print("\nrho metric from the enumeration (indices start at 1, sup rho = 1/2):")
for pair in ((0, 1), (1, -1), (2, 7)):
    print(f"  rho{pair} = {Z.rho(*pair)}  (indices {Z.index_of(pair[0])}, {Z.index_of(pair[1])})")

print("\nFolner boxes:")
print(f"  Z,  r=2: {Z.folner_box(2)}")
print(f"  Z2, r=1: {len(get_group('Z2').folner_box(1))} elements")
print(f"  H3, r=2: {len(H3.folner_box(2))} elements (|z| grows like r^2)")

print("\n=== orders of type Z as anchored bijections ===")
std = standard_integer_order()
print("standard order on Z: bi(k) = k, anchored at bi(0) = 0")
print(f"  bi(-3..3) = {[std.element_at(k) for k in range(-3, 4)]}")

# a window with the block {1, 2} listed in swapped order
window = OrderWindow(Z, -3, (-3, -2, -1, 0, 2, 1, 3, 4))
print("\npair-swap window ..., -1, 0, 2, 1, 3, ...:")
print(f"  bi(-3..4)   = {list(window.elements)}")
print(f"  succ(0)     = {window.succ(0)}   succ(2) = {window.succ(2)}")
print(f"  2 before 1? {window.compare(2, 1).name}")
print(f"  interval [0, 1] = {window.interval(0, 1)}  (finite, endpoints included)")
print(f"  interval [0, 4] = {window.interval(0, 4)}")

print("\nqueries beyond a window raise HorizonError (enlarge and retry):")
try:
    window.element_at(10)
except Exception as exc:
    print(f"  element_at(10) -> {type(exc).__name__}: {exc}")
