"""
Reducing classes in U + (-E8)
=============================

In U + (-E8) a class is aF + bB + xi. Reduction alternates sign changes,
the swap F <-> B, and the isometry E_omega, whose omega comes from the
nearest E8 point to -xi/b. The measure min(a, b) drops at every step.
"""
import random

from genusbound import AlgebraDescriptor, Even, h_closed, norm, reduce
from genusbound.reduction import random_word

alg = AlgebraDescriptor.build(Even(1))
form = alg.form
print("basis:", form.basis_labels())

# Scramble a simple class with a random word of generators
rng = random.Random(1)
A = (3, 2, 1, 0, 0, -1, 0, 0, 0, 0)
for move in random_word(alg, 12, rng):
    A = move.apply(form, A)
print("scrambled:", A, "norm", norm(form, A))

trace = reduce(alg, A)
print("measures :", trace.measures)
print("reduced  :", trace.output, "norm", norm(form, trace.output))

# The closed form (A.A + 2)/2 holds on every class, reduced or not
print("h =", h_closed(alg, A))
