"""
Singular polynomials for G(l, 1, n)
===================================

Over Q(w) with w a primitive l-th root of unity the family f_1..f_n is
killed by the complex Dunkl operators and permuted by the group.
"""
from cherednik.residues import ComplexGroupSpec, complex_dunkl_all, complex_group_action_check, complex_singular_family

spec = ComplexGroupSpec(n=2, ell=3, q=1, s=1, m=1)
print("nu =", spec.nu, " c =", [str(c) for c in spec.params], " degree =", spec.degree)
fs = complex_singular_family(spec)
for j, f in enumerate(fs, start=1):
    killed = all(r.is_zero() for r in complex_dunkl_all(spec, f))
    print(f"f_{j} = {f}   singular: {killed}")
print("equivariant:", complex_group_action_check(spec, fs))
