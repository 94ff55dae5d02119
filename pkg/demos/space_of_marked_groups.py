"""Distances, balls and limits in the space of marked groups."""
from markedgroups import ball, cayley_distance, distance, limit, parse_group
from markedgroups.oracle import cyclic_sequence, integers

z = integers()

# Z/n differs from Z first at a^n, whose shortlex index is 2n-1
for n in range(2, 7):
    print(f"d(Z/{n}, Z) =", distance(parse_group(f"Z/{n}"), z, 64))

# the Cayley-ball metric sees the cycle only once the radius reaches n/2
print("cayley d(Z/10, Z) =", cayley_distance(parse_group("Z/10"), z, 8))

b = ball(parse_group("F 2"), 2)
print(len(b), "vertices in the radius-2 ball of F2")
print(b.to_dot("F2")[:200], "...")

# Z/n converges to Z, and the limit oracle agrees bit for bit
lim = limit(cyclic_sequence())
print("limit bits 0..31:", "".join(str(lim.bit(n)) for n in range(32)))
print("Z bits     0..31:", "".join(str(z.bit(n)) for n in range(32)))
