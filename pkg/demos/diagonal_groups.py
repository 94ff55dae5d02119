"""A machine that loops yields Z; a machine halting at step p yields a finite cyclic group.

No scan of finitely many bits can tell the two apart in advance, which is
why distinguish_semidecide only ever answers Verified or Unknown.
"""
from markedgroups.markov import BUILTIN_LOOPING, diagonal_group, distinguish_semidecide
from markedgroups.machines import halt_at
from markedgroups.oracle import cyclic_sequence, integers

seq = cyclic_sequence()
z = integers()

looping = diagonal_group(seq, BUILTIN_LOOPING[0])
print("looping machine:", distinguish_semidecide(looping, z, 10 ** 5).status.value)

for p in (1, 3, 6):
    g = diagonal_group(seq, halt_at(p))
    v = distinguish_semidecide(g, z, 10 ** 5)
    print(f"halts at step {p}: first disagreement at bit {v.witness['bit']}, word {v.witness['word']}")
