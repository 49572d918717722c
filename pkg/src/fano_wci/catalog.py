"""Catalog of the 14 codimension-2 families, their hypersurface counterparts,
and the golden classification data (degrees, baskets, per-point link tags).

The catalog ships as a JSON file (see data/catalog.json); the same schema is
accepted from a user-supplied path so perturbed data can be fed to
`verify-tables`.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

from .wps import WeightSystem, anticanonical_cube, rat, rat_str

FAMILY_IDS = (17, 19, 23, 29, 30, 41, 42, 49, 50, 55, 69, 74, 77, 82)

SUBFAMILIES = {
    "I'2": frozenset({19, 30, 42}),
    "I''2": frozenset({17, 29, 41, 55, 69, 77}),
    "I'4": frozenset({23, 50}),
    "I''4": frozenset({49, 74, 82}),
}

ENV_CATALOG = "FANO_WCI_CATALOG"


class CatalogError(ValueError):
    """Raised when the catalog file fails to parse or violates an invariant."""


def subfamily_of(family_id: int) -> str:
    for tag, ids in SUBFAMILIES.items():
        if family_id in ids:
            return tag
    raise LookupError(f"unknown family id {family_id}")


def is_double_cover_shape(subfamily: str) -> bool:
    """True for the I' equation shape (w^2 x0 (x0+f) + w g + h), False for I''."""
    return subfamily in ("I'2", "I'4")


def cax_modulus(subfamily: str) -> int:
    return 2 if subfamily in ("I'2", "I''2") else 4


@dataclass(frozen=True)
class BasketEntry:
    type: str  # "1/r(w1,w2,w3)" or "cAx/2" or "cAx/4"
    count: int
    locus: str  # vertex "p4" or edge "p2p4"


@dataclass(frozen=True)
class LinkEntry:
    point: str
    tag: str  # "none" | "QI" | "EI" | "II" | "link"
    condition: str  # machine-readable flag, "" when unconditional


@dataclass(frozen=True)
class FamilyRecord:
    id: int
    kind: str  # "G" | "Gprime"
    weights: WeightSystem
    degrees: tuple[int, ...]
    subfamily: str

    def a_cube(self) -> Fraction:
        return anticanonical_cube(self.weights, self.degrees, label=f"No.{self.id}/{self.kind}")


@dataclass(frozen=True)
class GoldenRow:
    id: int
    a_cube: Fraction
    basket: tuple[BasketEntry, ...]
    link_column: tuple[LinkEntry, ...]


@dataclass(frozen=True)
class FamilyPair:
    g: FamilyRecord
    gprime: FamilyRecord
    golden: GoldenRow


class Catalog:
    """All 14 family pairs, indexed by id; immutable after load."""

    def __init__(self, pairs: list[FamilyPair]):
        self.pairs = sorted(pairs, key=lambda p: p.g.id)
        self._by_id = {p.g.id: p for p in self.pairs}

    def ids(self) -> tuple[int, ...]:
        return tuple(p.g.id for p in self.pairs)

    def pair(self, family_id: int) -> FamilyPair:
        if family_id not in self._by_id:
            raise LookupError(f"unknown family id {family_id}")
        return self._by_id[family_id]

    def g(self, family_id: int) -> FamilyRecord:
        return self.pair(family_id).g

    def gprime(self, family_id: int) -> FamilyRecord:
        return self.pair(family_id).gprime

    def golden(self, family_id: int) -> GoldenRow:
        return self.pair(family_id).golden


def default_catalog_path() -> str:
    override = os.environ.get(ENV_CATALOG)
    if override:
        return override
    return str(resources.files("fano_wci").joinpath("data/catalog.json"))


def _parse_record(obj: dict, where: str) -> FamilyRecord:
    for field in ("id", "kind", "weights", "degrees", "subfamily", "a_cube", "basket", "links"):
        if field not in obj:
            raise CatalogError(f"{where}: missing field '{field}'")
    fid = obj["id"]
    kind = obj["kind"]
    if kind not in ("G", "Gprime"):
        raise CatalogError(f"{where}: kind must be 'G' or 'Gprime', got {kind!r}")
    if fid not in FAMILY_IDS:
        raise CatalogError(f"{where}: id {fid} is not one of the 14 catalog families")
    subfamily = obj["subfamily"]
    if subfamily not in SUBFAMILIES:
        raise CatalogError(f"{where}: unknown subfamily {subfamily!r}")
    if fid not in SUBFAMILIES[subfamily]:
        raise CatalogError(f"{where}: id {fid} is not in subfamily {subfamily}")
    weights = WeightSystem(tuple(obj["weights"]))
    degrees = tuple(obj["degrees"])
    if kind == "G" and (len(weights) != 6 or len(degrees) != 2):
        raise CatalogError(f"{where}: G records need 6 weights and 2 degrees")
    if kind == "Gprime" and (len(weights) != 5 or len(degrees) != 1):
        raise CatalogError(f"{where}: Gprime records need 5 weights and 1 degree")
    return FamilyRecord(id=fid, kind=kind, weights=weights, degrees=degrees, subfamily=subfamily)


def load_catalog(path: str | None = None, strict: bool = True) -> Catalog:
    """Load and validate the catalog; any failure aborts the whole load.

    With strict=True (the default for programmatic use) the stated a_cube of
    every record must match its weights and degrees exactly.  verify-tables
    loads non-strictly so that an injected golden fault surfaces as a
    verification diff rather than a load error.
    """
    path = path or default_catalog_path()
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, list):
        raise CatalogError(f"catalog {path}: top level must be a JSON array")

    g_records: dict[int, FamilyRecord] = {}
    gprime_records: dict[int, FamilyRecord] = {}
    golden_rows: dict[int, GoldenRow] = {}
    for k, obj in enumerate(raw):
        where = f"catalog entry #{k}"
        rec = _parse_record(obj, where)
        bucket = g_records if rec.kind == "G" else gprime_records
        if rec.id in bucket:
            raise CatalogError(f"{where}: duplicate {rec.kind} record for id {rec.id}")
        bucket[rec.id] = rec
        try:
            a_cube = rat(obj["a_cube"])
        except (ValueError, ZeroDivisionError) as exc:
            raise CatalogError(f"{where}: bad a_cube {obj['a_cube']!r}: {exc}") from exc
        if strict and a_cube != rec.a_cube():
            raise CatalogError(
                f"{where}: a_cube mismatch for family {rec.id} ({rec.kind}): "
                f"file says {obj['a_cube']}, weights/degrees give {rat_str(rec.a_cube())}"
            )
        if rec.kind == "Gprime":
            basket = tuple(
                BasketEntry(type=b["type"], count=b["count"], locus=b["locus"])
                for b in obj["basket"]
            )
            links = tuple(
                LinkEntry(point=l["point"], tag=l["tag"], condition=l["condition"])
                for l in obj["links"]
            )
            for entry in basket:
                if entry.count < 1:
                    raise CatalogError(f"{where}: basket count must be >= 1 for family {rec.id}")
            for entry in links:
                if entry.tag not in ("none", "QI", "EI", "II", "link"):
                    raise CatalogError(f"{where}: bad link tag {entry.tag!r} for family {rec.id}")
                if entry.tag == "link" and entry.point != "p4":
                    raise CatalogError(f"{where}: link tag only at the cAx point p4 (family {rec.id})")
            golden_rows[rec.id] = GoldenRow(id=rec.id, a_cube=a_cube, basket=basket, link_column=links)

    missing_g = set(FAMILY_IDS) - set(g_records)
    missing_gp = set(FAMILY_IDS) - set(gprime_records)
    if missing_g or missing_gp:
        raise CatalogError(f"catalog incomplete: missing G records {sorted(missing_g)}, "
                           f"Gprime records {sorted(missing_gp)}")

    pairs = [
        FamilyPair(g=g_records[i], gprime=gprime_records[i], golden=golden_rows[i])
        for i in FAMILY_IDS
    ]
    return Catalog(pairs)
