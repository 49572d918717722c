"""Per-center certificates: the numerical tests that exclude a center as a
maximal center, or tag the birational involution / link that untwists it.

`dispatch` knows, for every catalog family and every center of its general
member, which certificate applies under which condition flags, evaluates it,
and returns certificate and verdict together.  Flags are machine-readable
strings such as "exists-wci(1,1,2)" or "monomial-absent(y^2 z)" mirroring the
condition marks of the catalog's link column.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .blowup import (BlowupLattice, DivisorClass, SectionLift, ambient_quadruple, b_cubed,
                     nef_bound_check, triple, vanishing_order)
from .catalog import Catalog, FamilyPair, cax_modulus, load_catalog
from .singularities import (CAxPoint, QuotientSingularity, family_support,
                            singular_locus, support_with_point_at_vertex)
from .wps import MonomialSupport, max_pair_lcm, rat_str


class UncoveredCaseError(ValueError):
    """No certificate covers the requested center under the given flags."""


# ---------------------------------------------------------------------------
# Centers, certificates, verdicts
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Center:
    kind: str  # "curve" | "smooth-point" | "quotient-point" | "cax-point"
    degree: Fraction | None = None
    gamma_sq_bound: Fraction | None = None
    quotient: QuotientSingularity | None = None
    cax: CAxPoint | None = None

    @classmethod
    def curve(cls, degree: Fraction, gamma_sq_bound: Fraction | None = None) -> "Center":
        if degree <= 0:
            raise ValueError("curve degree must be positive")
        return cls(kind="curve", degree=degree, gamma_sq_bound=gamma_sq_bound)

    @classmethod
    def smooth_point(cls) -> "Center":
        return cls(kind="smooth-point")

    @classmethod
    def quotient_point(cls, q: QuotientSingularity) -> "Center":
        return cls(kind="quotient-point", quotient=q)

    @classmethod
    def cax_point(cls, p: CAxPoint) -> "Center":
        return cls(kind="cax-point", cax=p)

    def describe(self) -> str:
        if self.kind == "curve":
            return f"curve of degree {rat_str(self.degree)}"
        if self.kind == "smooth-point":
            return "nonsingular point"
        if self.kind == "quotient-point":
            return f"{self.quotient.locus} = {self.quotient.type_str()}"
        return f"p4 = {self.cax.type_str()}"


@dataclass(frozen=True)
class Verdict:
    excluded: bool
    method: str
    witness: Fraction | None = None

    @property
    def resolved(self) -> bool:
        return self.excluded or self.method == "untwist"


@dataclass(frozen=True)
class CurveDegree:
    method = "curve-degree"
    deg: Fraction
    a_cube: Fraction

    def to_json(self) -> dict:
        return {"paper_method": self.method, "deg": rat_str(self.deg), "a_cube": rat_str(self.a_cube)}


@dataclass(frozen=True)
class CurveGamma:
    method = "curve-gamma"
    a_cube: Fraction
    deg: Fraction
    gamma_sq: Fraction

    def to_json(self) -> dict:
        return {"paper_method": self.method, "a_cube": rat_str(self.a_cube),
                "deg": rat_str(self.deg), "gamma_sq": rat_str(self.gamma_sq)}


@dataclass(frozen=True)
class CurveCycle:
    """A residual 1-cycle on the cutting surface meeting the curve at least as
    positively as the polarization does: (Gamma . Delta) >= (A . Delta) > 0."""
    method = "curve-cycle"
    gamma_dot_delta: Fraction
    a_dot_delta: Fraction

    def to_json(self) -> dict:
        return {"paper_method": self.method, "gamma_dot_delta": rat_str(self.gamma_dot_delta),
                "a_dot_delta": rat_str(self.a_dot_delta)}


@dataclass(frozen=True)
class Isolation:
    method = "isolation"
    bound: int
    limit: Fraction
    dropped_vertex: int | None

    def to_json(self) -> dict:
        return {"paper_method": self.method, "bound": self.bound, "limit": rat_str(self.limit),
                "dropped_vertex": self.dropped_vertex}


@dataclass(frozen=True)
class SurfacePair:
    method = "surface-pair"
    a1: int
    b_cube: Fraction
    gamma_support: MonomialSupport
    irreducibility_flag: bool

    def to_json(self) -> dict:
        return {"paper_method": self.method, "a1": self.a1, "b_cube": rat_str(self.b_cube),
                "gamma_support": [list(m) for m in self.gamma_support.sorted()],
                "irreducibility_flag": self.irreducibility_flag}


@dataclass(frozen=True)
class NefDivisor:
    method = "nef-divisor"
    lifts: tuple[SectionLift, ...]
    q: QuotientSingularity
    m_b2: Fraction
    c: Fraction
    certified: bool

    def to_json(self) -> dict:
        return {"paper_method": self.method,
                "lifts": [[l.class_b, rat_str(l.class_e)] for l in self.lifts],
                "q": self.q.type_str(), "m_b2": rat_str(self.m_b2),
                "c": rat_str(self.c), "certified": self.certified}


@dataclass(frozen=True)
class NegDefMatrix:
    """Intersection matrix [[alpha - m, m], [m, beta - m]] of a curve pair,
    negative-definite for every rational m >= parameter_floor."""
    method = "negdef-matrix"
    alpha: Fraction
    beta: Fraction
    parameter_floor: Fraction

    def entries_at(self, m: Fraction) -> list[list[Fraction]]:
        return [[self.alpha - m, m], [m, self.beta - m]]

    def to_json(self) -> dict:
        return {"paper_method": self.method,
                "entries": [[rat_str(e) for e in row] for row in self.entries_at(self.parameter_floor)],
                "parameter_floor": rat_str(self.parameter_floor),
                "alpha": rat_str(self.alpha), "beta": rat_str(self.beta)}


@dataclass(frozen=True)
class InfiniteCurves:
    method = "infinite-curves"
    b_dot_c: Fraction
    e_dot_c: Fraction

    def to_json(self) -> dict:
        return {"paper_method": self.method, "b_dot_c": rat_str(self.b_dot_c),
                "e_dot_c": rat_str(self.e_dot_c)}


@dataclass(frozen=True)
class Untwist:
    method = "untwist"
    tag: str  # "QI" | "EI" | "II" | "link"
    point: str
    condition: str = ""
    counterpart_id: int | None = None
    eligible: bool | None = None

    def to_json(self) -> dict:
        return {"paper_method": self.method, "tag": self.tag, "point": self.point,
                "condition": self.condition, "counterpart_id": self.counterpart_id,
                "eligible": self.eligible}


Certificate = (CurveDegree | CurveGamma | CurveCycle | Isolation | SurfacePair
               | NefDivisor | NegDefMatrix | InfiniteCurves | Untwist)


# ---------------------------------------------------------------------------
# Elementary tests
# ---------------------------------------------------------------------------

def curve_degree_test(deg: Fraction, a_cube: Fraction) -> Verdict:
    """A curve of degree at least (-K)^3 is not a maximal center."""
    if deg <= 0 or a_cube <= 0:
        raise ValueError("degree and (-K)^3 must be positive")
    return Verdict(excluded=deg >= a_cube, method="curve-degree", witness=deg - a_cube)


def curve_gamma_test(a_cube: Fraction, deg: Fraction, gamma_sq: Fraction) -> Verdict:
    """Low-degree curve with negative self-intersection on the cutting surface:
    excluded when 3 (-K)^3 - 2 deg + Gamma^2 <= 0."""
    if gamma_sq >= 0:
        raise ValueError("the self-intersection bound must be negative")
    witness = 3 * a_cube - 2 * deg + gamma_sq
    return Verdict(excluded=witness <= 0, method="curve-gamma", witness=witness)


def curve_cycle_test(gamma_dot_delta: Fraction, a_dot_delta: Fraction) -> Verdict:
    witness = gamma_dot_delta - a_dot_delta
    return Verdict(excluded=witness >= 0 and a_dot_delta > 0, method="curve-cycle", witness=witness)


def isolation_test(weights, dropped_vertex: int | None, a_cube: Fraction) -> tuple[int, Verdict]:
    """Nonsingular points are isolated by multiples of the polarization up to
    the max pairwise lcm of the surviving weights; excluded when that bound
    stays within 4 / (-K)^3."""
    keep = tuple(i for i in range(len(weights)) if i != dropped_vertex)
    bound = max_pair_lcm(weights, keep)
    limit = Fraction(4) / a_cube
    return bound, Verdict(excluded=Fraction(bound) <= limit, method="isolation", witness=Fraction(bound))


def surface_pair_test(a1: int, b_cube: Fraction, gamma_support: MonomialSupport,
                      irreducibility_flag: bool) -> Verdict:
    """(T . Gamma) = a1^2 (-K_Y)^3 <= 0 on the pair of coordinate surfaces,
    provided the restriction curve is irreducible."""
    if not irreducibility_flag:
        raise UncoveredCaseError(
            "surface-pair certificate needs the irreducibility condition; "
            "fall back to the family-specific certificate")
    if not gamma_support.monomials:
        raise ValueError("empty restriction support")
    witness = a1 * a1 * b_cube
    return Verdict(excluded=witness <= 0, method="surface-pair", witness=witness)


def negdef2(m: list[list[Fraction]]) -> bool:
    """Negative definiteness of a symmetric 2x2 rational matrix."""
    if m[0][1] != m[1][0]:
        raise ValueError("matrix is not symmetric")
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    return m[0][0] < 0 and det > 0


def negdef_for_all(cert: NegDefMatrix) -> bool:
    """Negative definiteness of [[alpha - m, m], [m, beta - m]] for every
    rational m >= floor: the determinant is affine in m and the leading entry
    decreases, so it suffices to check the floor and the determinant slope."""
    at_floor = negdef2(cert.entries_at(cert.parameter_floor))
    slope_ok = -(cert.alpha + cert.beta) >= 0
    return at_floor and slope_ok


def infinite_curves_test(b_dot_c: Fraction, e_dot_c: Fraction) -> Verdict:
    """An infinite family of curves meeting -K non-positively and E positively."""
    return Verdict(excluded=b_dot_c <= 0 and e_dot_c > 0, method="infinite-curves", witness=b_dot_c)


def gamma_polynomial(record) -> MonomialSupport:
    """Support of the defining polynomial restricted to the two heaviest
    x-coordinates and w (the curve cut by the two lightest coordinate
    hyperplanes), as exponent triples (e2, e3, e_w).

    Family 23 is stated in the normalized coordinates that put its edge point
    at the x2 vertex, which strikes the pure x2 power from the restriction.
    """
    if record.id not in GAMMA_FAMILIES:
        raise LookupError(f"family {record.id} has no restriction-curve row")
    support = family_support(record)
    if record.id in GAMMA_NORMALIZED:
        support = support_with_point_at_vertex(support, vertex=2, weight=record.weights[2])
    restricted = frozenset(
        (m[2], m[3], m[4]) for m in support.monomials if m[0] == 0 and m[1] == 0
    )
    return MonomialSupport(degree=support.degree, monomials=restricted)


GAMMA_FAMILIES = frozenset({23, 29, 42, 49, 50, 55, 74, 77, 82})
GAMMA_NORMALIZED = frozenset({23})


def qi_eligible(record, vertex: int) -> bool:
    """Structural eligibility for a quadratic involution at a quotient point:
    the defining polynomial contains x_v^2 x_j for some other coordinate j."""
    support = family_support(record)
    w = record.weights
    d = support.degree
    for j in range(5):
        if j == vertex or d - 2 * w[vertex] != w[j]:
            continue
        vec = [0] * 5
        vec[vertex] = 2
        vec[j] = 1
        if tuple(vec) in support:
            return True
    return False


# ---------------------------------------------------------------------------
# Per-family dispatch data
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RuleBranch:
    condition: str  # "" = unconditional
    method: str
    tag: str  # golden link tag for point centers; "" for curve/smooth rows


# which vertex is dropped in the smooth-point isolation bound
ISOLATION_DROP = {17: 3, 19: 2, 23: 4, 29: 3, 30: 3, 41: 3, 42: 2,
                  49: 3, 50: 1, 55: 3, 69: 3, 74: 3, 77: 3, 82: 3}

# degree of the exceptional low-degree curve through the cAx point, where one exists
SPECIAL_CURVE_DEG = {17: Fraction(1, 2), 19: Fraction(1, 2), 23: Fraction(1, 4)}

# self-intersection bounds of the exceptional curves on their cutting surfaces
CURVE_GAMMA_SQ = {19: Fraction(-3, 2), 23: Fraction(-1)}

# worst-case (Gamma . Delta) and deg Delta of the residual curve pair, family 17
CURVE_CYCLE_DATA = {17: (Fraction(1), Fraction(1, 2))}

# half-point with a nef divisor certificate: (vertex index, section coordinate indices)
NEF_DATA = {50: (1, (0, 2, 4)), 74: (1, (0, 2, 4)), 82: (1, (0, 2, 4))}

POINT_RULES: dict[int, dict[str, tuple[RuleBranch, ...]]] = {
    17: {"p4": (RuleBranch("", "untwist", "link"),)},
    19: {"p2p4": (RuleBranch("not-exists-wci(1,1,2)", "untwist", "EI"),
                  RuleBranch("exists-wci(1,1,2)", "untwist", "II")),
         "p3": (RuleBranch("", "untwist", "QI"),),
         "p4": (RuleBranch("", "untwist", "link"),)},
    23: {"p2p4": (RuleBranch("not-exists-wci(1,1,4)", "surface-pair", "none"),
                  RuleBranch("exists-wci(1,1,4)", "infinite-curves", "none")),
         "p3": (RuleBranch("", "untwist", "QI"),),
         "p4": (RuleBranch("", "untwist", "link"),)},
    29: {"p2p4": (RuleBranch("", "surface-pair", "none"),),
         "p4": (RuleBranch("", "untwist", "link"),)},
    30: {"p2": (RuleBranch("monomial-present(y^2 z)", "untwist", "QI"),
                RuleBranch("monomial-absent(y^2 z)", "infinite-curves", "none")),
         "p3": (RuleBranch("", "untwist", "QI"),),
         "p4": (RuleBranch("", "untwist", "link"),)},
    41: {"p2p3": (RuleBranch("", "untwist", "QI"),),
         "p4": (RuleBranch("", "untwist", "link"),)},
    42: {"p2p4": (RuleBranch("", "surface-pair", "none"),),
         "p3": (RuleBranch("", "untwist", "QI"),),
         "p4": (RuleBranch("", "untwist", "link"),)},
    49: {"p2p4": (RuleBranch("", "surface-pair", "none"),),
         "p4": (RuleBranch("", "untwist", "link"),)},
    50: {"p1p4": (RuleBranch("not-exists-wci(1,3,4)", "nef-divisor", "none"),
                  RuleBranch("exists-wci(1,3,4)", "negdef-matrix", "none")),
         "p2": (RuleBranch("monomial-present(z^3 t)", "surface-pair", "none"),
                RuleBranch("monomial-absent(z^3 t)", "negdef-matrix", "none")),
         "p3": (RuleBranch("", "untwist", "QI"),),
         "p4": (RuleBranch("", "untwist", "link"),)},
    55: {"p2": (RuleBranch("", "infinite-curves", "none"),),
         "p2p4": (RuleBranch("", "surface-pair", "none"),),
         "p4": (RuleBranch("", "untwist", "link"),)},
    69: {"p2": (RuleBranch("", "infinite-curves", "none"),),
         "p4": (RuleBranch("", "untwist", "link"),)},
    74: {"p1p4": (RuleBranch("", "nef-divisor", "none"),),
         "p2p3": (RuleBranch("", "surface-pair", "none"),),
         "p4": (RuleBranch("", "untwist", "link"),)},
    77: {"p2p3": (RuleBranch("", "surface-pair", "none"),),
         "p2p4": (RuleBranch("", "surface-pair", "none"),),
         "p4": (RuleBranch("", "untwist", "link"),)},
    82: {"p1p4": (RuleBranch("", "nef-divisor", "none"),),
         "p2": (RuleBranch("", "surface-pair", "none"),),
         "p4": (RuleBranch("", "untwist", "link"),)},
}


def minimal_curve_degree(family_id: int) -> Fraction:
    """Smallest curve degree not handled by a special certificate: curves
    through the cAx point have degree in (1/modulus) Z."""
    step = Fraction(1, cax_modulus_of(family_id))
    deg = step
    while deg == SPECIAL_CURVE_DEG.get(family_id):
        deg += step
    return deg


def cax_modulus_of(family_id: int) -> int:
    from .catalog import subfamily_of
    return cax_modulus(subfamily_of(family_id))


# ---------------------------------------------------------------------------
# Certificate builders
# ---------------------------------------------------------------------------

def _basket_entry(pair: FamilyPair, locus: str) -> QuotientSingularity:
    quotients, _ = singular_locus(pair.gprime)
    for q in quotients:
        if q.locus == locus:
            return q
    raise UncoveredCaseError(f"family {pair.g.id} has no quotient point at {locus}")


def _surface_pair(pair: FamilyPair, locus: str, flag: bool) -> tuple[SurfacePair, Verdict]:
    record = pair.gprime
    q = _basket_entry(pair, locus)
    cert = SurfacePair(
        a1=record.weights[1],
        b_cube=b_cubed(record.a_cube(), q),
        gamma_support=gamma_polynomial(record),
        irreducibility_flag=flag,
    )
    return cert, surface_pair_test(cert.a1, cert.b_cube, cert.gamma_support, cert.irreducibility_flag)


def _nef_divisor(pair: FamilyPair, locus: str) -> tuple[NefDivisor, Verdict]:
    record = pair.gprime
    q = _basket_entry(pair, locus)
    vertex, sections = NEF_DATA[record.id]
    w = record.weights
    support = support_with_point_at_vertex(family_support(record), vertex, w[vertex])
    local = tuple(
        Fraction(0) if i == vertex else Fraction(w[i] % q.r, q.r) for i in range(5)
    )
    lifts = []
    for i in sections:
        if i == 4:
            order = vanishing_order(support, local, eliminated=4)
        else:
            order = local[i]
        lifts.append(SectionLift.of(w[i], order, q.r))
    c, certified = nef_bound_check(lifts, q)
    lattice = BlowupLattice.over(record.a_cube(), [q])
    b_class = lattice.anticanonical()
    m_lift = max(lifts, key=lambda l: Fraction(l.class_e, l.class_b))
    m_class = m_lift.class_b * b_class + m_lift.class_e * lattice.exceptional_class()
    m_b2 = triple(lattice, m_class, b_class, b_class)
    cert = NefDivisor(lifts=tuple(lifts), q=q, m_b2=m_b2, c=c, certified=certified)
    verdict = Verdict(excluded=certified and m_b2 <= 0, method="nef-divisor", witness=m_b2)
    return cert, verdict


def _negdef_matrix(pair: FamilyPair, locus: str) -> tuple[NegDefMatrix, Verdict]:
    record = pair.gprime
    w = record.weights
    if record.id != 50:
        raise UncoveredCaseError(f"no curve-pair matrix data for family {record.id} at {locus}")
    if locus == "p1p4":
        # half point: the residual curve misses the exceptional divisor and is
        # cut on the coordinate plane (x = z = 0) by the degree-(d - b) slot,
        # so it pairs with -K by bare degree; the pair sums to (M . B^2)
        _, nef_verdict = _nef_divisor(pair, locus)
        alpha = Fraction(record.degrees[0] - w[4], w[1] * w[3] * w[4])
        beta = nef_verdict.witness - alpha
        cert = NegDefMatrix(alpha=alpha, beta=beta, parameter_floor=Fraction(1))
    else:
        # third point: (B . Gamma) via the ambient weighted blowup of the
        # 4-space; the companion entry is pinned golden data
        alpha = ambient_quadruple(
            record.weights.weights, 3, (1, 2, 2, 1),
            [(Fraction(1), Fraction(-1, 3)), (Fraction(1), Fraction(-1, 3)),
             (Fraction(2), Fraction(-2, 3)), (Fraction(4), Fraction(-1, 3))])
        cert = NegDefMatrix(alpha=alpha, beta=Fraction(1, 60), parameter_floor=Fraction(1, 2))
    ok = negdef_for_all(cert)
    det = cert.entries_at(cert.parameter_floor)
    witness = det[0][0] * det[1][1] - det[0][1] * det[1][0]
    return cert, Verdict(excluded=ok, method="negdef-matrix", witness=witness)


def _infinite_curves(pair: FamilyPair, locus: str) -> tuple[InfiniteCurves, Verdict]:
    record = pair.gprime
    q = _basket_entry(pair, locus)
    lattice = BlowupLattice.over(record.a_cube(), [q])
    b = lattice.anticanonical()
    e = lattice.exceptional_class()
    fid = record.id
    if fid == 23:
        # S . T splits off the WCI curve through the point; the residual pencil
        # meets -K trivially
        s, t = b, 4 * b
        gamma_b = Fraction(1, 6) - q.discrepancy()
        b_dot = triple(lattice, b, s, t) - gamma_b
        e_dot = triple(lattice, e, s, t) - 1
    elif fid == 30:
        b_dot = Fraction(2, 3) - q.discrepancy() * 2
        e_dot = Fraction(2)
    elif fid == 55:
        s, t = b, DivisorClass((Fraction(2), Fraction(-3, 2)))
        b_dot = triple(lattice, b, s, t)
        e_dot = triple(lattice, e, s, t)
    elif fid == 69:
        s, t = b, DivisorClass((Fraction(2), Fraction(-12, 5)))
        b_dot = triple(lattice, b, s, t)
        e_dot = triple(lattice, e, s, t)
    else:
        raise UncoveredCaseError(f"no infinite-curves data for family {fid} at {locus}")
    cert = InfiniteCurves(b_dot_c=b_dot, e_dot_c=e_dot)
    return cert, infinite_curves_test(b_dot, e_dot)


def _untwist(pair: FamilyPair, locus: str, tag: str, condition: str) -> tuple[Untwist, Verdict]:
    record = pair.gprime
    eligible = None
    if tag == "QI":
        w = record.weights
        if locus.count("p") == 1:
            vertex = int(locus[1:])
        else:
            i, j = int(locus[1]), int(locus[3])
            r = math.gcd(w[i], w[j])
            vertex = i if w[i] == r else j
            if w[vertex] != r:
                raise UncoveredCaseError(f"edge {locus} point cannot be moved to a vertex")
        eligible = qi_eligible(record, vertex)
        if not eligible:
            raise UncoveredCaseError(f"family {record.id} {locus}: no x^2 y tangent monomial, "
                                     f"quadratic involution not available")
    cert = Untwist(tag=tag, point=locus, condition=condition,
                   counterpart_id=record.id if tag == "link" else None,
                   eligible=eligible)
    return cert, Verdict(excluded=False, method="untwist", witness=None)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

_CATALOG_CACHE: Catalog | None = None


def _default_catalog() -> Catalog:
    global _CATALOG_CACHE
    if _CATALOG_CACHE is None:
        _CATALOG_CACHE = load_catalog()
    return _CATALOG_CACHE


def _select_branch(branches: tuple[RuleBranch, ...], flags: frozenset[str],
                   family_id: int, where: str) -> RuleBranch:
    unconditional = [br for br in branches if br.condition == ""]
    if unconditional:
        return unconditional[0]
    matching = [br for br in branches if br.condition in flags]
    if len(matching) == 1:
        return matching[0]
    wanted = ", ".join(br.condition for br in branches)
    if not matching:
        raise UncoveredCaseError(
            f"family {family_id} {where}: flags {sorted(flags)} cover no branch; expected one of: {wanted}")
    raise UncoveredCaseError(
        f"family {family_id} {where}: contradictory flags {sorted(flags)}; expected exactly one of: {wanted}")


def dispatch(family_id: int, center: Center, condition_flags: frozenset[str] | set[str] = frozenset(),
             catalog: Catalog | None = None) -> tuple[Certificate, Verdict]:
    """Select and evaluate the certificate assigned to a center of the general
    member of a catalog family under the given condition flags."""
    catalog = catalog or _default_catalog()
    pair = catalog.pair(family_id)
    flags = frozenset(condition_flags)
    record = pair.gprime
    a_cube = record.a_cube()

    if center.kind == "curve":
        deg = center.degree
        if deg == SPECIAL_CURVE_DEG.get(family_id):
            if family_id in CURVE_GAMMA_SQ:
                cert = CurveGamma(a_cube=a_cube, deg=deg, gamma_sq=CURVE_GAMMA_SQ[family_id])
                return cert, curve_gamma_test(cert.a_cube, cert.deg, cert.gamma_sq)
            gd, ad = CURVE_CYCLE_DATA[family_id]
            cert = CurveCycle(gamma_dot_delta=gd, a_dot_delta=ad)
            return cert, curve_cycle_test(gd, ad)
        cert = CurveDegree(deg=deg, a_cube=a_cube)
        verdict = curve_degree_test(deg, a_cube)
        if not verdict.excluded:
            raise UncoveredCaseError(
                f"family {family_id}: curve of degree {rat_str(deg)} is below (-K)^3 "
                f"and matches no special certificate")
        return cert, verdict

    if center.kind == "smooth-point":
        drop = ISOLATION_DROP[family_id]
        bound, verdict = isolation_test(record.weights, drop, a_cube)
        cert = Isolation(bound=bound, limit=Fraction(4) / a_cube, dropped_vertex=drop)
        return cert, verdict

    if center.kind in ("quotient-point", "cax-point"):
        locus = "p4" if center.kind == "cax-point" else center.quotient.locus
        rules = POINT_RULES[family_id].get(locus)
        if rules is None:
            raise UncoveredCaseError(f"family {family_id} has no center at {locus}")
        branch = _select_branch(rules, flags, family_id, locus)
        if branch.method == "untwist":
            return _untwist(pair, locus, branch.tag, branch.condition)
        if branch.method == "surface-pair":
            return _surface_pair(pair, locus, flag=True)
        if branch.method == "nef-divisor":
            return _nef_divisor(pair, locus)
        if branch.method == "negdef-matrix":
            return _negdef_matrix(pair, locus)
        if branch.method == "infinite-curves":
            return _infinite_curves(pair, locus)
        raise UncoveredCaseError(f"family {family_id} {locus}: unknown method {branch.method}")

    raise UncoveredCaseError(f"unknown center kind {center.kind}")
