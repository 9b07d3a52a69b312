"""
Twisted periods as residues
===========================

Residue formulas give the same invariants as the shift recursion, up to
scale, and for D4 the two degree-(4 + 6m) residues span the pair Q_2, Q_3.
"""
from cherednik import parse_group, residue_twisted_period, saito_frame, singular_family
from cherednik.linalg import linear_combination_coefficients
from cherednik.shift import twisted_period_dimensions

b3 = saito_frame(parse_group("B3"))
for s, beta in ((1, 3), (2, 2), (3, 1)):
    r = residue_twisted_period("B", 3, s, 1)
    Q = singular_family(b3, beta, 1).Q
    print(f"B3 s={s}: residue proportional to Q_{beta}:", r.is_proportional_to(Q))

d4 = saito_frame(parse_group("D4"))
span = [singular_family(d4, 2, 1).Q, singular_family(d4, 3, 1).Q]
for kind, s in (("D-infinity", 2), ("D-zero", 0)):
    r = residue_twisted_period(kind, 4, s, 1)
    print(f"D4 {kind}: coefficients in Q_2, Q_3 =", [str(c) for c in linear_combination_coefficients(r, span)])

# solutions of the twisted-period system, degree by degree
print("D4, nu = 1/2:", twisted_period_dimensions(parse_group("D4"), "1/2", 8))
