"""Corner contributions to the heat trace, two independent ways.

Every vertex of a curvilinear polygon contributes a t^0 term to the
short-time heat trace that depends only on its interior angle alpha and on
whether zero/two or exactly one of the adjacent edges carry a Dirichlet
condition:

    same type (D-D, N-N, R-R, N-R):  (pi^2 - alpha^2) / (24 pi alpha)
    mixed with Dirichlet (D-N, D-R): -(pi^2 + 2 alpha^2) / (48 pi alpha)

The same numbers fall out of a renormalized radial integral: truncate the
sector mode sum's radial integral at R = 1/eps, expand in eps, and read off
the eps^0 coefficient.  This script runs both routes over a fan of angles.
"""

import math

from heattrace import CornerKind, corner_coeff, corner_finite_part

PI = math.pi

print(f"{'pair':>5} {'alpha':>9} {'closed form':>13} {'finite part':>13} {'diff':>10}")
for pair in ("DD", "NN", "DN"):
    for alpha in (PI / 3, PI / 2, 2 * PI / 3, PI, 1.5 * PI):
        closed = corner_coeff(CornerKind(pair, alpha))
        fp = corner_finite_part(pair, alpha)
        print(
            f"{pair:>5} {alpha:9.5f} {closed:13.8f} {fp.finite_part:13.8f} "
            f"{fp.finite_part - closed:10.1e}"
        )

print()
print("The divergent coefficients of the cutoff expansion are fitted too;")
print("for a D-D right angle they are (area-like eps^-2, edge-like eps^-1):")
result = corner_finite_part("DD", PI / 2)
for q in sorted(result.divergent_coeffs):
    print(f"  eps^{q:+d}: {result.divergent_coeffs[q]: .8f}")
print(f"  fit condition number: {result.condition_number:.1f}")

print()
print("A phantom vertex (alpha = pi, same condition both sides) contributes")
print(f"nothing: closed form = {corner_coeff(CornerKind('DD', PI)):.1e}, and the")
print("boundary-condition jump on a smooth boundary costs -1/16 per jump:")
print(f"  corner_coeff(DN, pi) = {corner_coeff(CornerKind('DN', PI)):+.6f}")
