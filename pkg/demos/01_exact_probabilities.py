"""Exact threshold probabilities for Rademacher sums.

A Rademacher sum is eps . x where each sign eps_i is +1 or -1 with equal
probability.  With ||x||_2 = 1, how likely is the sum to land in [-1, 1]?
This walk-through computes such probabilities exactly, as rationals.
"""

from fractions import Fraction

from radsum import (
    EXACT,
    FLOAT,
    canonicalize,
    from_squares,
    sum_distribution,
    threshold_probability,
    threshold_probability_naive,
)

# Any input vector is canonicalized: signs are absorbed, entries sorted
# descending, and the scale divided out (and recorded).
w = canonicalize([3, 4], EXACT)
print("canonical form of [3, 4]:", w.values, "  recorded scale:", w.scale)

# The full distribution of eps . x for the 3-4-5 vector: four equally likely
# sums +-(0.8 + 0.6), +-(0.8 - 0.6).
dist = sum_distribution(w)
print("distribution:", [(str(v), c) for v, c in dist.entries])
print("Pr(|eps.x| <= 1)  =", threshold_probability(w, 1))

# Irrational weights enter through their squares.  x = (1/sqrt2, 1/sqrt2):
w2 = from_squares([Fraction(1, 2), Fraction(1, 2)])
print("\nx = (1/sqrt2, 1/sqrt2):", [str(v) for v in w2.values])
print("Pr(|eps.x| <= 1)  =", threshold_probability(w2, 1))

# The uniform 4-coordinate vector is the classic tight instance: the strict
# probability Pr(|eps.x| < 1) drops to 3/8, the smallest possible value.
u4 = from_squares([Fraction(1, 4)] * 4)
print("\nuniform-4 vector:", [str(v) for v in u4.values])
print("Pr(|eps.x| <= 1)  =", threshold_probability(u4, 1))
print("Pr(|eps.x| <  1)  =", threshold_probability(u4, 1, strict=True), " (sharp: 3/8)")

# Two independent engines compute the same counts: meet-in-the-middle
# (halves enumerated, sorted, swept) and the plain 2^n walk.
u9 = from_squares([Fraction(1, 9)] * 9)
mitm = threshold_probability(u9, 1)
naive = threshold_probability_naive(u9, 1)
print("\nuniform-9: meet-in-the-middle", mitm, "vs naive", naive, "equal:", mitm == naive)

# Float mode scales to n = 40 in under a second; counts are still exact
# integers, so the returned dyadic probability is exact for the float
# weights as evaluated.
import numpy as np

rng = np.random.default_rng(7)
w40 = canonicalize(list(rng.standard_normal(40)), FLOAT)
print("\nrandom n=40 (float):  Pr(|eps.x| <= 1) =", threshold_probability(w40, 1.0))
