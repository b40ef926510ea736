"""Heat-trace coefficients: closed formulas vs exactly solvable spectra.

For a polygon with area A, edges of length l_j, and vertex angles alpha_j,

    Tr H(t) = a_{-1}/t + a_{-1/2}/sqrt(t) + a_0 + O(t^{1/2} log t),

with a_{-1} = A/4pi, a_{-1/2} weighing non-Dirichlet minus Dirichlet edge
lengths, and a_0 collecting curvature, Robin, and corner terms.  Rectangles
and disks have computable spectra, so the coefficients can also be *measured*
by summing e^{-lambda t} and fitting the small-t window.  This script does
both and prints the differences.
"""

import math

from heattrace import (
    BoundaryCondition,
    DIRICHLET,
    NEUMANN,
    coefficients,
    disk_spec,
    fit_spectrum,
    rectangle_spec,
    rectangle_spectrum,
    sector_disk_spectrum,
)

ROBIN1 = BoundaryCondition.robin(1.0)

cases = [
    (
        "1x1 square, all Dirichlet",
        rectangle_spectrum(1.0, 1.0, ("D", "D"), ("D", "D")),
        rectangle_spec(1.0, 1.0, (DIRICHLET,) * 4),
    ),
    (
        "1x1 square, D pair / N pair",
        rectangle_spectrum(1.0, 1.0, ("D", "D"), ("N", "N")),
        rectangle_spec(1.0, 1.0, (NEUMANN, DIRICHLET, NEUMANN, DIRICHLET)),
    ),
    (
        "1x1 square, Robin(1) top, N elsewhere",
        rectangle_spectrum(1.0, 1.0, ("N", "N"), ("N", ("R", 1.0))),
        rectangle_spec(1.0, 1.0, (NEUMANN, NEUMANN, ROBIN1, NEUMANN)),
    ),
    (
        "unit disk, Dirichlet",
        sector_disk_spectrum(None, 1.0, None, "D"),
        disk_spec(1.0, DIRICHLET),
    ),
]

print(f"{'domain':<38} {'coef':>9} {'formula':>12} {'fitted':>12} {'diff':>9}")
for name, spectrum, polygon in cases:
    formula = coefficients(polygon)
    fitted = fit_spectrum(spectrum)
    rows = [
        ("a_-1", formula.a_minus1, fitted.a_minus1),
        ("a_-1/2", formula.a_minus_half, fitted.a_minus_half),
        ("a_0", formula.a_0, fitted.a_0),
    ]
    for label, f_val, m_val in rows:
        print(f"{name:<38} {label:>9} {f_val:12.7f} {m_val:12.7f} {m_val - f_val:9.1e}")
        name = ""
    print()

print("Note the Robin row: a positive Robin parameter (inward-normal")
print("convention) pushes every eigenvalue above its Neumann counterpart,")
print("so the Robin edge lowers a_0 by (1/2pi) int kappa; the fitted and")
print("closed-form values above agree on that sign.")
print()
sq = coefficients(rectangle_spec(1.0, 1.0, (DIRICHLET,) * 4))
print("Per-vertex breakdown of the Dirichlet square's a_0 = 1/4:")
for key in sorted(sq.breakdown):
    if sq.breakdown[key] != 0.0:
        print(f"  {key}: {sq.breakdown[key]:+.6f}")
