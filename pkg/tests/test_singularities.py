from fractions import Fraction

import pytest

from fano_wci.singularities import (CAX_MARKER, ClassificationError, NotQuasismoothError,
                                    NonIsolatedSingularityError, QuotientSingularity,
                                    cax_classify, edge_root_count, edge_singularities,
                                    equation_shape, extractions_at_cax, family_support,
                                    normalize_quotient, singular_locus, tangent_coordinate,
                                    vertex_singularities)
from fano_wci.wps import MonomialSupport, WeightSystem


def test_normalize_quotient_examples():
    assert normalize_quotient(3, (1, 2, 4)) == QuotientSingularity(3, 1)
    assert normalize_quotient(2, (1, 1, 1)) == QuotientSingularity(2, 1)
    assert normalize_quotient(5, (2, 1, 4)) == QuotientSingularity(5, 2)


def test_normalize_quotient_idempotent():
    for r in range(2, 12):
        for a in range(1, r):
            try:
                q = normalize_quotient(r, (1, a, r - a))
            except ClassificationError:
                continue
            again = normalize_quotient(q.r, (1, q.a, q.r - q.a))
            assert (again.r, again.a) == (q.r, q.a)


def test_normalize_quotient_rejects_non_terminal():
    with pytest.raises(ClassificationError):
        normalize_quotient(4, (1, 2, 2))
    with pytest.raises(ClassificationError):
        normalize_quotient(3, (1, 3, 2))  # zero weight mod 3


def test_vertex_examples(catalog):
    # weight-3 vertex of No.23 carries 1/3(1,1,2)
    entries = vertex_singularities(catalog.gprime(23))
    quotients = [e for e in entries if e != CAX_MARKER]
    assert [(q.locus, q.type_str()) for q in quotients] == [("p3", "1/3(1,1,2)")]
    # weight-4 vertex of No.30 carries 1/4(1,1,3)
    entries = vertex_singularities(catalog.gprime(30))
    quotients = {q.locus: q.type_str() for q in entries if e_is_quotient(q)}
    assert quotients == {"p2": "1/3(1,1,2)", "p3": "1/4(1,1,3)"}
    # No.17 has only the distinguished point
    entries = vertex_singularities(catalog.gprime(17))
    assert entries == [CAX_MARKER]


def e_is_quotient(entry):
    return entry != CAX_MARKER


def test_edge_examples(catalog):
    q29 = edge_singularities(catalog.gprime(29), (2, 4))
    assert (q29.type_str(), q29.count) == ("1/2(1,1,1)", 3)
    q23 = edge_singularities(catalog.gprime(23), (2, 4))
    assert (q23.type_str(), q23.count) == ("1/2(1,1,1)", 1)
    q19 = edge_singularities(catalog.gprime(19), (2, 4))
    assert (q19.type_str(), q19.count) == ("1/2(1,1,1)", 2)


def test_edge_count_zero_when_member_avoids_interior(catalog):
    # the (z, w) edge of No.30 meets the member only at vertices
    assert edge_singularities(catalog.gprime(30), (3, 4)) is None


def test_baskets_match_golden(catalog):
    for fid in catalog.ids():
        quotients, cax = singular_locus(catalog.gprime(fid))
        computed = sorted([(q.type_str(), q.count, q.locus) for q in quotients]
                          + [(cax.type_str(), 1, "p4")])
        golden = sorted((b.type, b.count, b.locus) for b in catalog.golden(fid).basket)
        assert computed == golden, f"family {fid}"


def test_cax_classify(catalog):
    p = cax_classify(catalog.gprime(19), f_is_zero=False, g1_is_zero=False)
    assert (p.modulus, p.square_type) == (2, True)
    p = cax_classify(catalog.gprime(19), f_is_zero=True, g1_is_zero=False)
    assert (p.modulus, p.square_type) == (2, False)
    p = cax_classify(catalog.gprime(49), f_is_zero=False, g1_is_zero=True)
    assert (p.modulus, p.square_type) == (4, False)


def test_extractions_at_cax(catalog):
    from fano_wci.links import build_counterpart
    # No.17: weights (a4, a1, a2, a3)/b = (3, 4, 1, 1)/2
    ld = build_counterpart(catalog.g(17))
    p = cax_classify(catalog.gprime(17), False, False)
    ext = extractions_at_cax(p, ld)
    assert ext.ambient_weights == (Fraction(3, 2), Fraction(2), Fraction(1, 2), Fraction(1, 2))
    assert ext.count == 2 and ext.discrepancy == Fraction(1, 2)
    # square vs non-square switches the number of extractions
    ld19 = build_counterpart(catalog.g(19))
    square = cax_classify(catalog.gprime(19), f_is_zero=False, g1_is_zero=False)
    nonsquare = cax_classify(catalog.gprime(19), f_is_zero=True, g1_is_zero=False)
    assert extractions_at_cax(square, ld19).count == 2
    assert extractions_at_cax(nonsquare, ld19).count == 1


def test_equation_shape_resolves_roles(catalog):
    shape = equation_shape(catalog.gprime(29))
    assert shape.role_weights == (2, 5, 1, 1)
    assert shape.role_to_display == (2, 3, 0, 1)
    shape = equation_shape(catalog.gprime(49))
    assert shape.role_weights == (1, 7, 1, 2)
    assert shape.role_to_display == (0, 3, 1, 2)


def test_family_support_has_capped_w_powers(catalog):
    for fid in catalog.ids():
        record = catalog.gprime(fid)
        support = family_support(record)
        cap = 2 if record.subfamily in ("I'2", "I'4") else 3
        assert max(m[4] for m in support.monomials) == cap
        assert all(sum(e * a for e, a in zip(m, record.weights)) == support.degree
                   for m in support.monomials)


def test_tangent_coordinate_error():
    w = WeightSystem((1, 1, 2, 3, 2))
    bare = MonomialSupport(degree=8, monomials=frozenset({(8, 0, 0, 0, 0)}))
    with pytest.raises(NotQuasismoothError):
        tangent_coordinate(bare, w, 3)


def test_edge_inside_member_error():
    w = WeightSystem((1, 1, 2, 3, 2))
    bare = MonomialSupport(degree=8, monomials=frozenset({(8, 0, 0, 0, 0)}))
    with pytest.raises(NonIsolatedSingularityError):
        edge_root_count(bare, w, 2, 4)
