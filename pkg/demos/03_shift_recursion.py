"""
Singular families from the shift recursion
==========================================

Starting from the covector e^beta and multiplying by U m times gives q_i of
degree d_beta - 1 + h m, singular at c = (d_beta - 1)/h + m.
"""
from cherednik import parse_group, saito_frame, singular_family
from cherednik.shift import isotypic_singular_space

frame = saito_frame(parse_group("B3"))
for beta in (1, 2, 3):
    for m in (0, 1):
        fam = singular_family(frame, beta, m, verify=True)
        print(f"beta={beta} m={m}  c={fam.c}  degree={fam.degree}  certified={fam.certified}")

# the family sits inside the V-isotypic singular polynomials of its degree
fam = singular_family(frame, 3, 1).normalized()
print("Q =", fam.Q)
iso = isotypic_singular_space(frame.rs, fam.c, fam.degree)
print("isotypic singular space at c =", fam.c, "has dimension", len(iso))
