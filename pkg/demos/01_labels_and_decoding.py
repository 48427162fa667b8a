"""Error labels, the MXOR gate and repetition-code decoding.

Run with ``python3 demos/01_labels_and_decoding.py``.
"""
from ghzdistill.labels import ErrorLabel, decode_repetition, depolarization_weight, mxor
from ghzdistill.oracle import mxor_decode

# A noisy 3-party GHZ copy is a label (beta, alpha): beta is the phase
# coordinate, alpha holds the two bit-flip coordinates.
source = ErrorLabel(2, 1, (1, 0))
target = ErrorLabel(2, 0, (0, 1))
print("source", source, "target", target)

# MXOR moves the target's phase onto the source and writes the bit-flip
# difference onto the target, which is then measured.
new_source, measured = mxor(source, target)
print("after MXOR:", new_source, measured)

# Decoding a block of n copies with the repetition code: the syndrome is
# alpha_j - alpha_0 and the source keeps the sum of all phases.
block = [ErrorLabel(3, 1, (2, 0)), ErrorLabel(3, 2, (2, 1)), ErrorLabel(3, 0, (0, 0))]
syndrome, residual = decode_repetition(block)
print("qutrit block", [str(b) for b in block])
print("  syndrome", syndrome, "residual", residual)
print("  same result from the gate sequence:", mxor_decode(block) == (syndrome, residual))
print("  copies carrying an error:", depolarization_weight(block))
