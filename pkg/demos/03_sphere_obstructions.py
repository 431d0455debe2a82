"""
Which classes might be spheres?
===============================

A class with h > 0 cannot be a sphere. When the cup product on degree one
is nontrivial no class of positive square can be one either. What is left
is compared with the short lists of admissible patterns.
"""

from genusbound import AlgebraDescriptor, Hyperbolic, Odd, sphere_check
from genusbound.lattice import grid_classes

alg = AlgebraDescriptor.build(Odd(2))
for A in [(1, 0, 0), (2, 0, 0), (3, 0, 0), (5, -4, -1), (3, -2, -2), (4, -4, 0)]:
    print(A, sphere_check(alg, A).short())

# With tilde_b1 = 2 on U only the multiples of F survive
ruled = AlgebraDescriptor.build(Hyperbolic(), tilde_b1=2)
survivors = [A for A in grid_classes(ruled.form, 4, up_to_sign=True)
             if any(A) and sphere_check(ruled, A).admissible]
print("admissible on U with T nontrivial:", survivors)
