"""
Judgment matrix to weight vector
================================

Four consumer wants are compared in pairs on the 3-point scale
{1/9, 1/3, 1, 3, 9}.  The matrix is reciprocal, so only the upper
triangle is ever entered.
"""

from fractions import Fraction

from paircomp import (
    approx_weights,
    consistency_report,
    eigen_weights,
    new_matrix,
    pair_sequence,
    set_judgment,
)

labels = ["battery life", "screen", "weight", "price"]
m = new_matrix(4, labels)

# the expert's six judgments, upper triangle in row-major order; note
# (2,4) disagrees a little with the chain through object 1
judgments = {
    (1, 2): 3,               # battery a bit ahead of screen
    (1, 3): 9,               # and far ahead of weight
    (1, 4): 3,
    (2, 3): 3,
    (2, 4): 3,
    (3, 4): Fraction(1, 3),
}
for (i, j), v in judgments.items():
    set_judgment(m, i, j, v)

print(m)
print()

# two estimators: normalized column means, and the Perron eigenvector
w_approx = approx_weights(m)
w_eigen, lam = eigen_weights(m)

print(f"{'want':<14} {'approx':>8} {'eigen':>8}")
for idx, label in enumerate(labels):
    print(f"{label:<14} {w_approx[idx]:>8.4f} {w_eigen[idx]:>8.4f}")

# the consistency ratio says whether the judgments cohere enough to use;
# the usual acceptance threshold is CR <= 0.1
rep = consistency_report(m)
print()
print(f"lambda_max = {rep.lambda_max:.6f}  (h = 4)")
print(f"CI = {rep.ci:.6f}   RI = {rep.ri:.6f}   CR = {rep.cr:.6f}")
print("acceptable" if rep.acceptable else "too inconsistent, re-elicit")

# a perfectly consistent matrix has lambda_max = h exactly
ideal = new_matrix(4, labels)
w = [0.45, 0.25, 0.05, 0.25]
for i, j in pair_sequence(4):
    set_judgment(ideal, i, j, w[i - 1] / w[j - 1])
_, lam_ideal = eigen_weights(ideal)
print(f"\nexact-ratio matrix: lambda_max = {lam_ideal:.12f}")
