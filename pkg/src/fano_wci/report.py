"""Per-family analysis reports and the golden-table verification engine.

`GOLDEN` collects the classification numbers (degrees, blowup signs,
certificate witnesses, restriction-curve supports, isolation bounds).
`verify_tables` recomputes every one of them from weights and degrees alone
and reports any difference; it is the machine-checkable regression for the
whole catalog.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import blowup, exclusion, links, singularities
from .catalog import Catalog, FamilyPair
from .exclusion import Center, Certificate, Verdict
from .wps import rat_str, wps_str

F = Fraction


@dataclass(frozen=True)
class GoldenNumbers:
    """Golden-table values, keyed by family (and locus)."""

    a_cube: dict[int, Fraction]
    b_cube_signs: dict[tuple[int, str], int]
    nef_witness: dict[int, Fraction]
    isolation: dict[int, tuple[int, Fraction]]
    curve_witness: dict[int, Fraction]
    matrices: dict[tuple[int, str], tuple[Fraction, Fraction, Fraction]]
    infinite_curves: dict[tuple[int, str], tuple[Fraction, Fraction]]
    gamma_rows: dict[int, frozenset[tuple[int, int, int]]]
    tower_cube: Fraction
    half_point_curve: Fraction


GOLDEN = GoldenNumbers(
    a_cube={
        17: F(1), 19: F(2, 3), 23: F(5, 12), 29: F(1, 2), 30: F(5, 12),
        41: F(1, 3), 42: F(3, 10), 49: F(1, 4), 50: F(7, 60), 55: F(1, 4),
        69: F(1, 5), 74: F(1, 12), 77: F(1, 6), 82: F(1, 20),
    },
    b_cube_signs={
        (23, "p2p4"): -1, (29, "p2p4"): 0, (30, "p2"): 1, (42, "p2p4"): -1,
        (49, "p2p4"): -1, (50, "p1p4"): -1, (50, "p2"): -1, (55, "p2"): 1,
        (55, "p2p4"): -1, (69, "p2"): 1, (74, "p1p4"): -1, (74, "p2p3"): -1,
        (77, "p2p3"): 0, (77, "p2p4"): -1, (82, "p1p4"): -1, (82, "p2"): 0,
    },
    nef_witness={50: F(-3, 20), 74: F(-1, 4), 82: F(-1, 4)},
    isolation={42: (10, F(40, 3)), 19: (6, F(6)), 50: (20, F(240, 7)), 23: (6, F(48, 5))},
    curve_witness={19: F(-1, 2), 23: F(-1, 4)},
    matrices={
        (50, "p1p4"): (F(1, 4), F(-2, 5), F(1)),
        (50, "p2"): (F(-1, 10), F(1, 60), F(1, 2)),
    },
    infinite_curves={
        (23, "p2p4"): (F(0), F(3)), (30, "p2"): (F(0), F(2)),
        (55, "p2"): (F(0), F(2)), (69, "p2"): (F(0), F(2)),
    },
    gamma_rows={
        23: frozenset({(3, 0, 1), (0, 2, 1), (2, 2, 0)}),
        29: frozenset({(2, 0, 3), (3, 0, 2), (4, 0, 1), (5, 0, 0), (0, 2, 0)}),
        42: frozenset({(2, 0, 2), (0, 2, 1), (3, 0, 0)}),
        49: frozenset({(5, 0, 1), (7, 0, 0), (0, 2, 0)}),
        50: frozenset({(2, 0, 2), (0, 2, 1), (3, 1, 0)}),
        55: frozenset({(2, 0, 3), (3, 0, 1), (0, 2, 0)}),
        74: frozenset({(2, 0, 3), (6, 0, 0), (3, 1, 0), (0, 2, 0)}),
        77: frozenset({(2, 0, 3), (3, 0, 0), (0, 2, 0)}),
        82: frozenset({(2, 0, 3), (0, 2, 0)}),
    },
    tower_cube=F(-1, 12),
    half_point_curve=F(-1, 3),
)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BranchResult:
    condition: str
    tag: str  # golden third-column tag, "" for curve/smooth rows
    certificate: Certificate
    verdict: Verdict


@dataclass(frozen=True)
class CenterReport:
    center: Center
    branches: tuple[BranchResult, ...]


@dataclass(frozen=True)
class Report:
    family_id: int
    pair: FamilyPair
    a_cube: Fraction
    basket: list
    cax: singularities.CAxPoint
    link_data: links.LinkData
    extractions: singularities.ExtractionDescriptor
    centers: tuple[CenterReport, ...]
    uncovered: tuple[str, ...]

    @property
    def birigid_summary(self) -> str:
        return "all-centers-resolved" if not self.uncovered else f"uncovered-cases({', '.join(self.uncovered)})"


def _point_centers(pair: FamilyPair):
    quotients, cax = singularities.singular_locus(pair.gprime)
    out = [(Center.quotient_point(q), q.locus) for q in quotients]
    out.append((Center.cax_point(cax), "p4"))
    return quotients, cax, out


def build_report(catalog: Catalog, family_id: int) -> Report:
    pair = catalog.pair(family_id)
    record = pair.gprime
    a_cube = record.a_cube()
    quotients, cax, point_centers = _point_centers(pair)
    link_data = links.build_counterpart(pair.g)
    extractions = singularities.extractions_at_cax(cax, link_data)

    centers: list[CenterReport] = []
    uncovered: list[str] = []

    def run(center: Center, branches: list[str], tags: dict[str, str]) -> None:
        results = []
        for condition in branches:
            flags = frozenset({condition}) if condition else frozenset()
            try:
                cert, verdict = exclusion.dispatch(family_id, center, flags, catalog=catalog)
                results.append(BranchResult(condition=condition, tag=tags.get(condition, ""),
                                            certificate=cert, verdict=verdict))
                if not verdict.resolved:
                    uncovered.append(f"{center.describe()} [{condition or 'unconditional'}]")
            except exclusion.UncoveredCaseError as exc:
                uncovered.append(str(exc))
        centers.append(CenterReport(center=center, branches=tuple(results)))

    run(Center.curve(exclusion.minimal_curve_degree(family_id)), [""], {})
    if family_id in exclusion.SPECIAL_CURVE_DEG:
        deg = exclusion.SPECIAL_CURVE_DEG[family_id]
        gamma = exclusion.CURVE_GAMMA_SQ.get(family_id)
        run(Center.curve(deg, gamma), [""], {})
    run(Center.smooth_point(), [""], {})
    for center, locus in point_centers:
        rules = exclusion.POINT_RULES[family_id][locus]
        run(center, [br.condition for br in rules], {br.condition: br.tag for br in rules})

    return Report(family_id=family_id, pair=pair, a_cube=a_cube, basket=quotients, cax=cax,
                  link_data=link_data, extractions=extractions,
                  centers=tuple(centers), uncovered=tuple(uncovered))


def _describe_branch(br: BranchResult) -> str:
    v = br.verdict
    body = v.method
    if v.witness is not None:
        body += f" (witness {rat_str(v.witness)})"
    if br.condition:
        body += f" [{br.condition}]"
    return body


def render_markdown(report: Report) -> str:
    g, gp = report.pair.g, report.pair.gprime
    ld = report.link_data
    d1, d2 = g.degrees
    lines = [
        f"# Family No.{report.family_id}",
        "",
        f"- G:  X_{{{d1},{d2}}} in {wps_str(g.weights)}",
        f"- G': X'_{gp.degrees[0]} in {wps_str(gp.weights)}, A^3 = {rat_str(report.a_cube)}",
        f"- link: b = {ld.b}, {ld.equation_shape}, midpoint Z_{ld.z_degree},"
        f" extractions at cAx/{report.cax.modulus}: {report.extractions.count}",
        "",
        "| center | method | link |",
        "|---|---|---|",
    ]
    for cr in report.centers:
        if cr.center.kind not in ("quotient-point", "cax-point"):
            continue
        methods = "; ".join(_describe_branch(br) for br in cr.branches)
        tags = "; ".join(
            (br.tag if br.tag != "link" else f"link to X_{{{d1},{d2}}} in G_{report.family_id}")
            or "excluded" for br in cr.branches
        )
        lines.append(f"| {cr.center.describe()} | {methods} | {tags} |")
    lines.append("")
    for cr in report.centers:
        if cr.center.kind in ("quotient-point", "cax-point"):
            continue
        for br in cr.branches:
            lines.append(f"- {cr.center.describe()}: {_describe_branch(br)}")
    lines.append(f"- summary: {report.birigid_summary}")
    lines.append("")
    return "\n".join(lines)


def _golden_record_json(pair: FamilyPair) -> dict:
    gp, golden = pair.gprime, pair.golden
    return {
        "id": gp.id,
        "kind": "Gprime",
        "weights": list(gp.weights),
        "degrees": list(gp.degrees),
        "subfamily": gp.subfamily,
        "a_cube": rat_str(golden.a_cube),
        "basket": [{"type": b.type, "count": b.count, "locus": b.locus} for b in golden.basket],
        "links": [{"point": l.point, "tag": l.tag, "condition": l.condition} for l in golden.link_column],
    }


def render_json(report: Report) -> dict:
    g = report.pair.g
    return {
        "family": report.family_id,
        "a_cube": rat_str(report.a_cube),
        "g_weights": list(g.weights),
        "g_degrees": list(g.degrees),
        "link": {
            "b": report.link_data.b,
            "xprime_weights": list(report.link_data.display_weights()),
            "xprime_degree": report.link_data.xprime_degree,
            "z_degree": report.link_data.z_degree,
            "equation_shape": report.link_data.equation_shape,
            "extraction_count": report.extractions.count,
            "extraction_weights": [rat_str(x) for x in report.extractions.ambient_weights],
        },
        "basket": [{"type": q.type_str(), "count": q.count, "locus": q.locus} for q in report.basket]
        + [{"type": report.cax.type_str(), "count": 1, "locus": "p4"}],
        "centers": [
            {
                "center": cr.center.describe(),
                "branches": [
                    {
                        "condition": br.condition,
                        "tag": br.tag,
                        "excluded": br.verdict.excluded,
                        "method": br.verdict.method,
                        "witness": None if br.verdict.witness is None else rat_str(br.verdict.witness),
                        "certificate": br.certificate.to_json(),
                    }
                    for br in cr.branches
                ],
            }
            for cr in report.centers
        ],
        "birigid_summary": report.birigid_summary,
        "golden_record": _golden_record_json(report.pair),
    }


# ---------------------------------------------------------------------------
# Golden-table verification
# ---------------------------------------------------------------------------

def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def verify_family(catalog: Catalog, family_id: int) -> list[str]:
    """All mismatches between recomputed quantities and golden data for one
    family; empty when everything agrees."""
    diffs: list[str] = []
    pair = catalog.pair(family_id)
    g, gp, golden = pair.g, pair.gprime, pair.golden

    def diff(msg: str) -> None:
        diffs.append(f"family {family_id}: {msg}")

    # degrees of the anticanonical models
    a_cube = gp.a_cube()
    if a_cube != GOLDEN.a_cube[family_id]:
        diff(f"A^3 computed {rat_str(a_cube)} != table {rat_str(GOLDEN.a_cube[family_id])}")
    if golden.a_cube != a_cube:
        diff(f"catalog a_cube {rat_str(golden.a_cube)} != computed {rat_str(a_cube)}")

    # link construction and round trip
    ld = links.build_counterpart(g)
    if ld.display_weights().weights != gp.weights.weights:
        diff(f"counterpart ambient {ld.display_weights().weights} != catalog {gp.weights.weights}")
    if ld.xprime_degree != gp.degrees[0]:
        diff(f"counterpart degree {ld.xprime_degree} != catalog {gp.degrees[0]}")
    back_weights, back_degrees = links.counterpart_inverse(gp)
    if back_weights.weights != g.weights.weights or back_degrees != tuple(sorted(g.degrees)):
        diff(f"round trip gave {back_weights.weights} {back_degrees}, catalog has "
             f"{g.weights.weights} {g.degrees}")
    form = links.to_standard_form(g)
    if ld.b != form.b or ld.b not in (2, 4):
        diff(f"b = {ld.b} inconsistent with standard form")
    a4, a5 = form.role_weights[4], form.role_weights[5]
    z_expected = form.degrees[0] + form.degrees[1] - a5
    if ld.z_degree != z_expected or (ld.equation_shape == "I''-shape" and ld.z_degree != 3 * a4) \
            or (ld.equation_shape == "I'-shape" and ld.z_degree != a4 + form.degrees[0]):
        diff(f"midpoint degree {ld.z_degree} fails its consistency identities")

    # basket
    quotients, cax = singularities.singular_locus(gp)
    computed = sorted([(q.type_str(), q.count, q.locus) for q in quotients]
                      + [(cax.type_str(), 1, "p4")])
    stated = sorted((b.type, b.count, b.locus) for b in golden.basket)
    if computed != stated:
        diff(f"basket computed {computed} != catalog {stated}")

    # blowup signs at every annotated quotient point
    for (fid, locus), sign in GOLDEN.b_cube_signs.items():
        if fid != family_id:
            continue
        match = [q for q in quotients if q.locus == locus]
        if not match:
            diff(f"no computed point at {locus} for B^3 sign check")
            continue
        val = blowup.b_cubed(a_cube, match[0])
        if _sign(val) != sign:
            diff(f"B^3 at {locus} computed {rat_str(val)}, table sign says {sign}")

    # involution inventory against the golden link column
    try:
        inventory = links.involution_inventory(pair, quotients)
        got = sorted((t.point, t.tag, t.condition) for t in inventory)
        want = sorted((l.point, l.tag, l.condition) for l in golden.link_column)
        if got != want:
            diff(f"link column computed {got} != catalog {want}")
    except ValueError as exc:
        diff(str(exc))

    # every center of the report resolves, and witnesses match the table
    report = build_report(catalog, family_id)
    if report.uncovered:
        diff(f"uncovered centers: {report.birigid_summary}")
    for cr in report.centers:
        for br in cr.branches:
            v = br.verdict
            if v.method == "nef-divisor" and family_id in GOLDEN.nef_witness:
                if v.witness != GOLDEN.nef_witness[family_id]:
                    diff(f"nef witness {rat_str(v.witness)} != table "
                         f"{rat_str(GOLDEN.nef_witness[family_id])}")
                if not br.certificate.certified:
                    diff("nef divisor not certified")
            if v.method == "negdef-matrix":
                key = (family_id, _locus_of(cr.center))
                if key in GOLDEN.matrices:
                    alpha, beta, floor = GOLDEN.matrices[key]
                    cert = br.certificate
                    if (cert.alpha, cert.beta, cert.parameter_floor) != (alpha, beta, floor):
                        diff(f"matrix data ({rat_str(cert.alpha)}, {rat_str(cert.beta)}, "
                             f"{rat_str(cert.parameter_floor)}) != table "
                             f"({rat_str(alpha)}, {rat_str(beta)}, {rat_str(floor)})")
            if v.method == "infinite-curves":
                key = (family_id, _locus_of(cr.center))
                if key in GOLDEN.infinite_curves:
                    b_dot, e_dot = GOLDEN.infinite_curves[key]
                    cert = br.certificate
                    if (cert.b_dot_c, cert.e_dot_c) != (b_dot, e_dot):
                        diff(f"infinite-curves data ({rat_str(cert.b_dot_c)}, "
                             f"{rat_str(cert.e_dot_c)}) != table ({rat_str(b_dot)}, {rat_str(e_dot)})")
            if v.method == "isolation" and family_id in GOLDEN.isolation:
                bound, limit = GOLDEN.isolation[family_id]
                cert = br.certificate
                if (cert.bound, cert.limit) != (bound, limit):
                    diff(f"isolation ({cert.bound}, {rat_str(cert.limit)}) != table "
                         f"({bound}, {rat_str(limit)})")
            if v.method == "curve-gamma" and family_id in GOLDEN.curve_witness:
                if v.witness != GOLDEN.curve_witness[family_id]:
                    diff(f"curve witness {rat_str(v.witness)} != table "
                         f"{rat_str(GOLDEN.curve_witness[family_id])}")

    # restriction-curve supports
    if family_id in GOLDEN.gamma_rows:
        support = exclusion.gamma_polynomial(gp)
        if support.monomials != GOLDEN.gamma_rows[family_id]:
            diff(f"restriction curve support {sorted(support.monomials)} != table "
                 f"{sorted(GOLDEN.gamma_rows[family_id])}")
    return diffs


def _locus_of(center: Center) -> str:
    return "p4" if center.kind == "cax-point" else center.quotient.locus


def verify_tables(catalog: Catalog) -> list[str]:
    diffs: list[str] = []
    for family_id in catalog.ids():
        try:
            diffs.extend(verify_family(catalog, family_id))
        except (ValueError, LookupError) as exc:
            # corrupt golden data can break a precondition mid-computation;
            # that is a verification failure, not a crash
            diffs.append(f"family {family_id}: {exc}")
    diffs.extend(_verify_towers(catalog))
    return diffs


def _verify_towers(catalog: Catalog) -> list[str]:
    """The two blowup-tower numbers quoted for family 19."""
    diffs = []
    g19 = catalog.g(19)
    half = singularities.QuotientSingularity(2, 1)
    quarter = singularities.QuotientSingularity(4, 1)
    lattice = blowup.BlowupLattice.over(g19.a_cube(), [half, quarter])
    k = lattice.anticanonical()
    tower = blowup.triple(lattice, k, k, k)
    if tower != GOLDEN.tower_cube:
        diffs.append(f"family 19: tower (-K)^3 = {rat_str(tower)} != {rat_str(GOLDEN.tower_cube)}")
    curve = Fraction(1, 6) - Fraction(1, 2)
    if curve != GOLDEN.half_point_curve:
        diffs.append(f"family 19: half-point curve pairing {rat_str(curve)} != "
                     f"{rat_str(GOLDEN.half_point_curve)}")
    return diffs
