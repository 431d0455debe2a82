"""
Genus bounds on blow-ups of the projective plane
================================================

The form <1> + n<-1> has basis H, E1, ..., En. A class is written as raw
coefficients, so (4, -3, -2, -1) means 4H - 3E1 - 2E2 - E3.
"""

from genusbound import AlgebraDescriptor, Odd, h_bruteforce, h_closed, reduce

# Curves of degree d in the plane: the bound is the familiar (d-1)(d-2)/2
plane = AlgebraDescriptor.build(Odd(0))
for d in range(1, 8):
    print(f"degree {d}: h = {h_closed(plane, (d,))}")

# Blow up three points. 4H - 3E1 - 2E2 - E3 is not reduced (4 < 3 + 2 + 1),
# so a Cremona reflection along H - E1 - E2 - E3 is applied first.
alg = AlgebraDescriptor.build(Odd(3))
trace = reduce(alg, (4, -3, -2, -1))
for move in trace.moves:
    print("move:", move.to_json())
print("reduced class:", trace.output)

# h is the same on every class of the orbit, and the brute-force oracle
# (a search over adjunction classes in a box) agrees with the closed form.
A = (4, -3, -2, -1)
print("closed form:", h_closed(alg, A))
print("oracle     :", h_bruteforce(alg, A, 12).value)

# Classes with negative h: a(H - E1) for a >= 2
one = AlgebraDescriptor.build(Odd(1))
print([h_closed(one, (a, -a)) for a in range(1, 7)])
