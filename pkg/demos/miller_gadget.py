"""Build the a, b, c gadget over <x | >, solve its word problem, then watch x = 1 collapse it."""
from markedgroups.clopen import member
from markedgroups.miller import Presentation, l3_wp, step3_presentation, trivializes
from markedgroups.oracle import integers

out = step3_presentation(Presentation(1, names=("x",)), (1,))
print(out.l3)

l3 = l3_wp(integers(), (1,))
for text, word in [("x", (1,)), ("b", (3,)), ("first relator", out.l3.relators[0])]:
    print(f"{text} is trivial:", l3.is_relation(word))
print("gadget lies in its own clopen set:", member(l3, out.pi))

# adding x = 1 forces b, c, a and x to be trivial
v = trivializes(out, (1,), 10 ** 6)
print(v.status.value, "after", v.fuel_spent, "fuel; derived:", sorted(v.witness["certificates"]))
