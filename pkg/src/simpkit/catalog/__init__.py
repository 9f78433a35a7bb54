"""Bundled library of triangulations with precomputed properties."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from math import comb
from pathlib import Path

from ..complex import SimplicialComplex, euler_characteristic, f_vector, from_facets, neighborliness
from ..errors import CatalogError
from ..homology import HomologyGroup, homology
from .query import Query, evaluate, parse_query

FORMAT_VERSION = 1
ENV_VAR = "SIMPKIT_CATALOG"
BUNDLED_PATH = Path(__file__).with_name("data") / "catalog.json"
SPOT_CHECKS = 6

__all__ = [
    "Catalog", "CatalogEntry", "load_catalog", "default_catalog", "search_by_name",
    "search_by_attribute", "load_entry", "compute_properties", "h_vector", "g_vector",
    "parse_query", "evaluate",
]


def h_vector(f: list[int]) -> list[int]:
    """h_1..h_{d+1} from f_0..f_d (h_0 = 1 is omitted, as F omits f_{-1})."""
    d = len(f) - 1
    ff = [1] + list(f)  # ff[i] = f_{i-1}
    out = []
    for k in range(1, d + 2):
        out.append(sum((-1) ** (k - i) * comb(d + 1 - i, k - i) * ff[i] for i in range(k + 1)))
    return out


def g_vector(f: list[int]) -> list[int]:
    """g_k = h_k - h_{k-1} for k = 1..floor((d+1)/2)."""
    h = [1] + h_vector(f)
    d = len(f) - 1
    return [h[k] - h[k - 1] for k in range(1, (d + 1) // 2 + 1)]


def _homology_doc(groups) -> list:
    return [[g.rank, list(g.torsion)] for g in groups]


def compute_properties(K: SimplicialComplex) -> dict:
    """The property map stored with each entry, recomputed from facets."""
    f = f_vector(K)
    return {
        "Dim": K.dim,
        "F": f,
        "G": g_vector(f),
        "H": h_vector(f),
        "Chi": euler_characteristic(K),
        "Homology": _homology_doc(homology(K)),
        "Neighborliness": neighborliness(K),
    }


@dataclass(frozen=True)
class CatalogEntry:
    id: int
    name: str
    facets: tuple
    properties: dict = field(default_factory=dict, hash=False, compare=False)

    def to_doc(self) -> dict:
        return {"id": self.id, "name": self.name, "facets": [list(f) for f in self.facets],
                "properties": self.properties}


class Catalog:
    """Immutable collection of entries, ordered by id."""

    def __init__(self, entries=(), edition: str = ""):
        self.edition = edition
        self._entries = tuple(sorted(entries, key=lambda e: e.id))
        self._by_id = {e.id: e for e in self._entries}
        if len(self._by_id) != len(self._entries):
            raise CatalogError("duplicate entry ids")
        names = [e.name for e in self._entries]
        if len(set(names)) != len(names):
            raise CatalogError("duplicate entry names")

    def __len__(self):
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __getitem__(self, id: int) -> CatalogEntry:
        try:
            return self._by_id[id]
        except KeyError:
            raise KeyError(f"no catalog entry with id {id}") from None

    def by_name(self, name: str) -> CatalogEntry:
        for e in self._entries:
            if e.name == name:
                return e
        raise KeyError(f"no catalog entry named {name!r}")

    def to_doc(self) -> dict:
        return {"format_version": FORMAT_VERSION, "edition": self.edition,
                "entries": [e.to_doc() for e in self._entries]}

    def dumps(self) -> str:
        return json.dumps(self.to_doc(), indent=1) + "\n"


def _parse_entry(raw, position) -> CatalogEntry:
    label = f"entry #{position}"
    try:
        label = f"entry {raw['id']} ({raw.get('name', '?')!r})"
        id_ = raw["id"]
        name = raw["name"]
        facets = tuple(tuple(int(v) for v in f) for f in raw["facets"])
        props = dict(raw.get("properties", {}))
    except (KeyError, TypeError, ValueError) as exc:
        raise CatalogError(f"malformed {label}: {exc}") from None
    if not isinstance(id_, int) or isinstance(id_, bool) or id_ < 1:
        raise CatalogError(f"malformed {label}: id must be a positive integer")
    if not isinstance(name, str) or not name:
        raise CatalogError(f"malformed {label}: name must be non-empty text")
    if not facets:
        raise CatalogError(f"malformed {label}: no facets")
    if any(f != tuple(sorted(set(f))) for f in facets):
        raise CatalogError(f"malformed {label}: facets must be strictly increasing")
    return CatalogEntry(id_, name, facets, props)


def _spot_sample(entries, k=SPOT_CHECKS):
    n = len(entries)
    if n <= k:
        return list(entries)
    return [entries[round(j * (n - 1) / (k - 1))] for j in range(k)]


def check_entry(entry: CatalogEntry, keys=None) -> None:
    """Raise CatalogError unless stored properties match recomputation."""
    try:
        K = from_facets(entry.facets, entry.name)
    except ValueError as exc:
        raise CatalogError(f"entry {entry.id} ({entry.name!r}): {exc}") from None
    fresh = compute_properties(K)
    for key in keys or entry.properties:
        if key in fresh and key in entry.properties and entry.properties[key] != fresh[key]:
            raise CatalogError(
                f"entry {entry.id} ({entry.name!r}): stored {key}={entry.properties[key]} "
                f"but recomputation gives {fresh[key]}")


def load_catalog(path=None, verify: bool = True) -> Catalog:
    """Read a catalog file; ``path`` defaults to $SIMPKIT_CATALOG, then the bundled file.

    An empty file is an empty catalog. With ``verify`` a deterministic sample
    of entries (first, last and evenly spaced between) is recomputed.
    """
    if path is None:
        path = os.environ.get(ENV_VAR) or BUNDLED_PATH
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CatalogError(f"cannot read catalog {path}: {exc}") from None
    if not text.strip():
        return Catalog()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog {path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "entries" not in doc:
        raise CatalogError(f"catalog {path} has no entry list")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise CatalogError(f"catalog {path} has format version {version}, expected {FORMAT_VERSION}")
    entries = [_parse_entry(raw, i + 1) for i, raw in enumerate(doc["entries"])]
    cat = Catalog(entries, doc.get("edition", ""))
    if verify:
        for e in _spot_sample(list(cat)):
            check_entry(e)
    return cat


_default = None


def default_catalog() -> Catalog:
    """The catalog named by the environment, else the bundled one (loaded once)."""
    global _default
    if os.environ.get(ENV_VAR):
        return load_catalog()
    if _default is None:
        _default = load_catalog(BUNDLED_PATH)
    return _default


def search_by_name(cat: Catalog, pattern: str) -> list[tuple[int, str]]:
    """(id, name) of entries whose name contains ``pattern`` (case-sensitive)."""
    return [(e.id, e.name) for e in cat if pattern in e.name]


def search_by_attribute(cat: Catalog, q: Query | str) -> list[tuple[int, str]]:
    """(id, name) of entries whose stored properties satisfy ``q``."""
    if isinstance(q, str):
        q = parse_query(q)
    return [(e.id, e.name) for e in cat if evaluate(q, e.properties)]


def load_entry(cat: Catalog, id: int) -> SimplicialComplex:
    """Build the complex of an entry, with its cache warmed from the stored properties."""
    e = cat[id]
    K = from_facets(e.facets, e.name)
    p = e.properties
    if "F" in p:
        K.cache.put("f_vector", list(p["F"]))
    if "Chi" in p:
        K.cache.put("euler_characteristic", p["Chi"])
    if "Neighborliness" in p:
        K.cache.put("neighborliness", p["Neighborliness"])
    if "Homology" in p:
        K.cache.put("homology", [HomologyGroup(r, tuple(t)) for r, t in p["Homology"]])
    return K
