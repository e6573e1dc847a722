"""The Case-2 stopping-time partition, exactly.

For x1 + x2 <= 1, classify each sign sequence by the first prefix length
k in {2..n-1} whose partial sum s_k escapes [-(1-x_{k+1}), 1-x_{k+1}]; if
none escapes, the sequence lands in the final event A_n.  These events
partition all 2^n sequences, and the conditional success probabilities
Pr(|s_n| <= 1 | A_k) are what the certificate bounds from below.
"""

from fractions import Fraction

from radsum import (
    from_squares,
    g,
    h,
    hybrid_bound,
    case2_certificate,
    prefix_partition,
    threshold_probability,
)

u4 = from_squares([Fraction(1, 4)] * 4)
rep = prefix_partition(u4)
print("uniform-4 partition:")
for i, k in enumerate(rep.ks):
    cond = rep.conds[i] if rep.conds[i] is not None else "-"
    print(f"  A_{k}: Pr = {rep.probs[i]}, joint = {rep.joints[i]}, cond = {cond}")
print("  total:", rep.total_prob, "=", threshold_probability(u4, 1))

# The partition is exact: probabilities sum to 1, and the conditional for
# the no-crossing event A_n is always 1 (the sum can never escape).
assert sum(rep.probs) == 1 and rep.conds[-1] == 1

# Each nonempty crossing event k obeys cond_k >= max(g_k, h_k)(x_{k+1}) -
# the inequality the certificate is built from:
for i, k in enumerate(rep.ks):
    if k < u4.n and rep.probs[i] > 0:
        bound = max(g(k, u4.values[k]), h(k, u4.values[k]))
        print(f"  check A_{k}: cond {rep.conds[i]} >= bound {bound}")

# Weighting each event's bound by its exact probability gives the hybrid
# refinement, sandwiched between the O(n) certificate and the true value:
cert = case2_certificate(u4)
hb = hybrid_bound(u4)
print("\ncertificate", cert.final_bound, "<= hybrid", hb, "<= exact", rep.total_prob)

# A lopsided instance: crossing happens immediately or never.
w = from_squares([Fraction(9, 25), Fraction(4, 25)] + [Fraction(1, 25)] * 12)
rep2 = prefix_partition(w)
nonzero = [(k, str(rep2.probs[i])) for i, k in enumerate(rep2.ks) if rep2.probs[i] > 0]
print("\nlopsided 14-coordinate instance, nonempty events:", nonzero[:6], "...")
print("total:", rep2.total_prob, " hybrid:", hybrid_bound(w), " certificate:",
      case2_certificate(w).final_bound)
