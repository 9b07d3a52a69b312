"""
Dunkl operators and singular polynomials
========================================

A polynomial is singular at c when every Dunkl operator kills it.  For B2 the
coordinate x1 is singular exactly when 1 - 4c = 0.
"""
from cherednik import MultiPoly, check_commutativity, dunkl_apply, is_singular, mpq, parse_group

b2 = parse_group("B2")
print(b2.name, "roots:", b2.descriptor()["roots"], "h =", b2.h)

x1, x2 = MultiPoly.gens(2)
for c in (mpq(1, 3), mpq(1, 4)):
    print(f"c = {c}:  nabla_1 x1 = {dunkl_apply(b2, c, 0, x1)}")

# the certificate keeps every residual, not just a yes/no
cert = is_singular(b2, mpq(1, 3), x1)
print("singular at 1/3?", cert.singular, "residuals:", [str(r) for r in cert.residuals])

# the operators commute for every c
monomials = [x1**3 * x2, x1 * x2**2, x2**4 + x1]
print("commute at c = 5/7:", check_commutativity(b2, mpq(5, 7), monomials).ok)
