"""Certified root enclosures and the sigma labeling.

Real roots come from Sturm isolation, complex roots from untrusted mpmath
seeds promoted to certified inclusion discs. sigma_1..sigma_s are the real
embeddings in increasing order, sigma_{s+1}..sigma_{s+t} the upper
half-plane ones, and sigma_{s+t+k} is the conjugate of sigma_{s+k}.
"""

from otlck import NumberField
from otlck.embeddings import evaluate, field_embeddings, norm_enclosure, sign_at
from otlck.intervals import fraction_to_decimal

K = NumberField([1, 0, -1, 0, 4, 0, -4, 0, 1])
print(K)
emb = field_embeddings(K, 128)
for i, kind, _ in emb.index_map():
    b = emb.ball(i)
    print(f"sigma_{i} ({kind:5})  re ~ {fraction_to_decimal(b.re, 12):>16}  im ~ {fraction_to_decimal(b.im, 12):>16}"
          f"  radius < 2^-128")

x = K.gen
print("signs of x at the real embeddings:", [sign_at(x, i) for i in range(1, K.s + 1)])
print("signs of x^2 - 2:", [sign_at(x ** 2 - 2, i) for i in range(1, K.s + 1)])

# sigma_7 is the mirror image of sigma_5, by construction
u = x + 3
print("conjugate pair exact:", evaluate(u, 5, 64).conjugate() == evaluate(u, 7, 64))

# the product of all embeddings encloses the exact norm
ball = norm_enclosure(x - 1, 96)
print("N(x - 1) enclosure center", fraction_to_decimal(ball.re, 20), "radius", float(ball.rad))
