"""Heat-trace coefficients (a_{-1}, a_{-1/2}, a_0) for curvilinear polygons.

Implements the short-time trace expansion

    Tr H(t) = a_{-1} t^{-1} + a_{-1/2} t^{-1/2} + a_0 + O(t^{1/2} log t)

for mixed Dirichlet/Neumann/Robin edges, with per-vertex corner terms that
depend only on whether the vertex touches exactly one Dirichlet edge, the
Gauss-Bonnet alternate form of a_0, and the induced non-isospectrality test.
"""

import math
from dataclasses import dataclass, field

from .corner_lab import CornerKind, cone_point_coeff, corner_coeff
from .errors import DomainError, InconsistentSpecError
from .sector_models import BoundaryCondition

_TWO_PI = 2.0 * math.pi

REMAINDER_ORDER = "O(t^(1/2) log t)"


@dataclass(frozen=True)
class EdgeSpec:
    """One smooth boundary edge: its length, boundary condition, geodesic
    curvature integral, and (for Robin edges) the integral of kappa."""

    length: float
    bc: BoundaryCondition
    geodesic_curvature_integral: float = 0.0
    robin_integral: float | None = None

    def __post_init__(self):
        if not self.length > 0.0:
            raise DomainError(f"edge length must be positive, got {self.length}")
        if self.bc.kind == "R":
            integral = self.robin_integral
            if integral is None and self.bc.robin_kappa is not None:
                object.__setattr__(self, "robin_integral", self.bc.robin_kappa * self.length)
            elif integral is not None and not integral > 0.0:
                raise DomainError("robin_integral must be positive")
        elif self.robin_integral is not None:
            raise DomainError("robin_integral is only meaningful on Robin edges")

    @property
    def is_dirichlet(self):
        return self.bc.kind == "D"


@dataclass(frozen=True)
class BoundaryLoop:
    """A closed chain of edges; angles[j] is the interior angle of the vertex
    joining edge j and edge j+1 (mod n).  A single edge with no angles is a
    smooth loop, equivalent to one with a single phantom vertex of angle pi."""

    edges: tuple
    angles: tuple

    def __post_init__(self):
        if len(self.edges) == 0:
            raise DomainError("a boundary loop needs at least one edge")
        if len(self.angles) == 0 and len(self.edges) != 1:
            raise DomainError("only single-edge loops may omit angles")
        if self.angles and len(self.angles) != len(self.edges):
            raise DomainError(
                f"loop has {len(self.edges)} edges but {len(self.angles)} angles"
            )
        for a in self.angles:
            if not 0.0 < a < _TWO_PI:
                raise DomainError(
                    f"vertex angles must lie strictly inside (0, 2*pi), got {a}"
                )

    def vertices(self):
        """(angle, edge_before, edge_after) triples; angles[j] joins edge j
        and edge j+1 mod n."""
        n = len(self.edges)
        out = []
        for j, angle in enumerate(self.angles):
            out.append((angle, self.edges[j], self.edges[(j + 1) % n]))
        return out


@dataclass(frozen=True)
class PolygonSpec:
    """A curvilinear polygon: area, Gauss-curvature data (either the integral
    of K or the Euler characteristic), boundary loops, and cone points given
    by their opening angles."""

    area: float
    loops: tuple
    gauss_curvature_integral: float | None = None
    euler_characteristic: int | None = None
    cone_points: tuple = ()

    def __post_init__(self):
        if not self.area > 0.0:
            raise DomainError(f"area must be positive, got {self.area}")
        if self.gauss_curvature_integral is None and self.euler_characteristic is None:
            raise DomainError(
                "provide gauss_curvature_integral or euler_characteristic"
            )
        if not self.loops:
            raise DomainError("at least one boundary loop is required")
        for opening in self.cone_points:
            if not opening > 0.0:
                raise DomainError(f"cone opening angles must be positive, got {opening}")
        if self.euler_characteristic is not None and self.cone_points:
            raise DomainError(
                "Euler-characteristic input is not supported together with cone "
                "points; supply gauss_curvature_integral instead"
            )

    def all_edges(self):
        return [e for loop in self.loops for e in loop.edges]

    def all_vertices(self):
        return [v for loop in self.loops for v in loop.vertices()]

    def curvature_defect_sum(self):
        """sum over vertices of (pi - alpha_j)."""
        return math.fsum(math.pi - a for a, _, _ in self.all_vertices())

    def gauss_integral(self, check_tol=1e-9):
        """int_Omega K dz, from the given integral or via Gauss-Bonnet
        2 pi chi = int K + int k_g + sum (pi - alpha_j); raises when both
        are given and disagree."""
        kg_sum = math.fsum(e.geodesic_curvature_integral for e in self.all_edges())
        defect = self.curvature_defect_sum()
        if self.euler_characteristic is None:
            return self.gauss_curvature_integral
        implied = _TWO_PI * self.euler_characteristic - kg_sum - defect
        if self.gauss_curvature_integral is not None:
            if abs(self.gauss_curvature_integral - implied) > check_tol:
                raise InconsistentSpecError(
                    "gauss_curvature_integral and euler_characteristic violate "
                    f"Gauss-Bonnet by {abs(self.gauss_curvature_integral - implied):.3e}",
                    field="euler_characteristic",
                )
            return self.gauss_curvature_integral
        return implied


@dataclass(frozen=True)
class TraceCoefficients:
    a_minus1: float
    a_minus_half: float
    a_0: float
    breakdown: dict = field(default_factory=dict)
    remainder_order: str = REMAINDER_ORDER

    def __post_init__(self):
        if not self.a_minus1 > 0.0:
            raise DomainError("a_minus1 must be positive (it is area / 4 pi)")
        if abs(self.a_0 - math.fsum(self.breakdown.values())) > 1e-14 * max(
            1.0, abs(self.a_0)
        ):
            raise DomainError("a_0 must equal the sum of its breakdown entries")

    def as_tuple(self):
        return (self.a_minus1, self.a_minus_half, self.a_0)


def _vertex_kind(angle, edge_before, edge_after):
    """Corner class from the two adjacent edges: exactly one Dirichlet edge
    makes a mixed vertex; zero or two make a same-type vertex.  Robin edges
    count as non-Dirichlet."""
    n_dirichlet = int(edge_before.is_dirichlet) + int(edge_after.is_dirichlet)
    pair = "DN" if n_dirichlet == 1 else ("DD" if n_dirichlet == 2 else "NN")
    return CornerKind(pair, angle)


def coefficients(spec):
    """Heat-trace coefficients of the polygon:

        a_{-1}  = A / 4 pi
        a_{-1/2} = (sum_{j not in D} l_j - sum_{j in D} l_j) / (8 sqrt pi)
        a_0     = (int K)/12 pi + (int k_g)/12 pi - (sum int kappa)/2 pi
                  + corner terms + cone terms.

    The Robin edge term enters with a minus sign: positive kappa (inward
    normal convention) raises every eigenvalue above its Neumann value, so
    the trace and its t^0 coefficient must decrease; the exactly solvable
    rectangle oracles confirm the magnitude kappa l/(2 pi) and the sign.
    """
    edges = spec.all_edges()
    a_minus1 = spec.area / (4.0 * math.pi)
    non_d = math.fsum(e.length for e in edges if not e.is_dirichlet)
    dir_len = math.fsum(e.length for e in edges if e.is_dirichlet)
    a_minus_half = (non_d - dir_len) / (8.0 * math.sqrt(math.pi))
    breakdown = {
        "gauss_curvature": spec.gauss_integral() / (12.0 * math.pi),
        "geodesic_curvature": math.fsum(
            e.geodesic_curvature_integral for e in edges
        )
        / (12.0 * math.pi),
        "robin": -math.fsum(
            e.robin_integral for e in edges if e.bc.kind == "R"
        )
        / (2.0 * math.pi),
    }
    for i, (angle, before, after) in enumerate(spec.all_vertices()):
        breakdown[f"vertex_{i}"] = corner_coeff(_vertex_kind(angle, before, after))
    for i, opening in enumerate(spec.cone_points):
        breakdown[f"cone_{i}"] = cone_point_coeff(opening)
    a_0 = math.fsum(breakdown.values())
    return TraceCoefficients(a_minus1, a_minus_half, a_0, breakdown)


def coefficients_gb(spec):
    """a_0 through the Gauss-Bonnet alternate form

        a_0 = chi/6 - sum (pi - alpha_j)/12 pi + Robin + corner sums,

    with the same (negative) Robin edge term as coefficients(); identical to
    it whenever the curvature data is Gauss-Bonnet consistent.
    """
    if spec.euler_characteristic is None:
        raise DomainError("coefficients_gb needs euler_characteristic")
    spec.gauss_integral()  # raises on inconsistent redundant data
    edges = spec.all_edges()
    a_minus1 = spec.area / (4.0 * math.pi)
    non_d = math.fsum(e.length for e in edges if not e.is_dirichlet)
    dir_len = math.fsum(e.length for e in edges if e.is_dirichlet)
    a_minus_half = (non_d - dir_len) / (8.0 * math.sqrt(math.pi))
    breakdown = {
        "euler": spec.euler_characteristic / 6.0,
        "angle_defect": -spec.curvature_defect_sum() / (12.0 * math.pi),
        "robin": -math.fsum(
            e.robin_integral for e in edges if e.bc.kind == "R"
        )
        / (2.0 * math.pi),
    }
    for i, (angle, before, after) in enumerate(spec.all_vertices()):
        breakdown[f"vertex_{i}"] = corner_coeff(_vertex_kind(angle, before, after))
    a_0 = math.fsum(breakdown.values())
    return TraceCoefficients(a_minus1, a_minus_half, a_0, breakdown)


@dataclass(frozen=True)
class DistinguishVerdict:
    isospectral_possible: bool
    witness: str | None = None
    values: tuple | None = None

    @property
    def not_isospectral(self):
        return not self.isospectral_possible


def distinguish(spec1, spec2, tol=1e-12):
    """Compare the three trace invariants of two polygon specs.

    Returns a verdict naming the first coefficient that differs (the domains
    then cannot be isospectral); when all three agree to tol the invariants
    computed here cannot separate the domains and the verdict is inconclusive.
    """
    c1 = coefficients(spec1)
    c2 = coefficients(spec2)
    for name, v1, v2 in (
        ("a_minus1", c1.a_minus1, c2.a_minus1),
        ("a_minus_half", c1.a_minus_half, c2.a_minus_half),
        ("a_0", c1.a_0, c2.a_0),
    ):
        if abs(v1 - v2) > tol:
            return DistinguishVerdict(False, witness=name, values=(v1, v2))
    return DistinguishVerdict(True)


# ---------------------------------------------------------------------------
# convenience constructors for the standard test domains

def rectangle_spec(a, b, bcs):
    """Rectangle [0,a] x [0,b]; bcs gives the conditions on the sides
    (bottom, right, top, left) as BoundaryCondition objects."""
    bottom, right, top, left = bcs
    edges = (
        EdgeSpec(a, bottom),
        EdgeSpec(b, right),
        EdgeSpec(a, top),
        EdgeSpec(b, left),
    )
    loop = BoundaryLoop(edges=edges, angles=(math.pi / 2.0,) * 4)
    return PolygonSpec(area=a * b, loops=(loop,), gauss_curvature_integral=0.0)


def disk_spec(radius, bc):
    """Flat disk of the given radius with one smooth boundary loop."""
    edge = EdgeSpec(
        _TWO_PI * radius, bc, geodesic_curvature_integral=_TWO_PI
    )
    loop = BoundaryLoop(edges=(edge,), angles=())
    return PolygonSpec(
        area=math.pi * radius * radius,
        loops=(loop,),
        gauss_curvature_integral=0.0,
    )
