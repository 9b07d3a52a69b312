"""
Flat coordinates on the orbit space
===================================

The metric g^{ab} = sum_i d_i t^a d_i t^b, rewritten in the t's, becomes
linear in t^1 with d/dt^1 g constant and antidiagonal.
"""
from cherednik import parse_group, saito_frame, verify_saito

for group in ("B2", "A3", "D4"):
    frame = saito_frame(parse_group(group))
    print(f"--- {group}  degrees {frame.degrees}")
    for a, t in enumerate(frame.t, start=1):
        print(f"t^{a} =", t)
    print("flat:", verify_saito(frame).ok)

# D4 has two coordinates of degree 4; making eta antidiagonal there needs sqrt(-3)
print("D4 coefficient field:", frame.field)

# the matrix U^b_a = g^{b, n+1-a} drives the shift recursion
b2 = saito_frame(parse_group("B2"))
for b in range(2):
    print([str(b2.U[b, a]) for a in range(2)])
