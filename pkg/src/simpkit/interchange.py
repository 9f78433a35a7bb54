"""Saving, loading, importing and exporting complexes.

Native layout (UTF-8, one field per line, fixed order)::

    format_version: 1
    name: "<json string>"
    labels: <json list, label of id 1, 2, ...>
    facets: <count>
    1 2 3
    ...
    properties: <json object, sorted keys>
    end

Facet lines hold 1-based internal ids, ascending, lines sorted
lexicographically, so a complex has exactly one serialization.
"""
from __future__ import annotations

import json
from pathlib import Path

from .complex import SimplicialComplex, _maximal, from_facets
from .errors import FormatVersionError, ParseError
from .homology import HomologyGroup, IntersectionForm

FORMAT_VERSION = 1


# -- property codec ------------------------------------------------------------
# Only properties with a faithful JSON form are persisted; anything else in
# the cache (automorphism groups, presentations, internal tables) is dropped.

def _enc_homology(v):
    return [[g.rank, list(g.torsion)] for g in v]


def _dec_homology(v):
    return [HomologyGroup(int(r), tuple(int(t) for t in tor)) for r, tor in v]


def _enc_form(v):
    return {"gram": v.gram, "parity": v.parity, "signature_triple": list(v.signature_triple)}


def _dec_form(v):
    return IntersectionForm(v["gram"], v["parity"], tuple(v["signature_triple"]))


def _same(v):
    return v


_CODEC = {
    "f_vector": (list, list),
    "euler_characteristic": (_same, int),
    "neighborliness": (_same, int),
    "is_pseudomanifold": (_same, bool),
    "is_tight": (_same, _same),
    "homology": (_enc_homology, _dec_homology),
    "intersection_form": (_enc_form, _dec_form),
}


def _codec_for(key):
    if key in _CODEC:
        return _CODEC[key]
    if key.startswith("betti_mod_") and key[len("betti_mod_"):].isdigit():
        return list, list
    return None


def encode_properties(K: SimplicialComplex) -> dict:
    out = {}
    for key, value in K.cache.items():
        codec = _codec_for(key)
        if codec is not None:
            out[key] = codec[0](value)
    return out


def decode_properties(doc: dict) -> dict:
    out = {}
    for key, value in doc.items():
        codec = _codec_for(key)
        if codec is None:
            continue
        out[key] = codec[1](value)
    return out


# -- labels ----------------------------------------------------------------------

def _label_to_json(x):
    if isinstance(x, tuple):
        return [_label_to_json(y) for y in x]
    if isinstance(x, (bool, int, str)):
        return x
    raise TypeError(f"label {x!r} has no native encoding (use int, str or tuples of those)")


def _label_from_json(x):
    if isinstance(x, list):
        return tuple(_label_from_json(y) for y in x)
    return x


def _dumps(x) -> str:
    return json.dumps(x, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


# -- native format ---------------------------------------------------------------

def dumps(K: SimplicialComplex, properties: bool = True) -> str:
    lines = [
        f"format_version: {FORMAT_VERSION}",
        f"name: {_dumps(K.name)}",
        f"labels: {_dumps([_label_to_json(x) for x in K.labels])}",
        f"facets: {len(K.facets)}",
    ]
    lines.extend(" ".join(map(str, f)) for f in sorted(K.facets))
    lines.append(f"properties: {_dumps(encode_properties(K) if properties else {})}")
    lines.append("end")
    return "\n".join(lines) + "\n"


def save(K: SimplicialComplex, path, properties: bool = True) -> None:
    Path(path).write_text(dumps(K, properties), encoding="utf-8")


def _field(lines, i, key):
    if i >= len(lines):
        raise ParseError(f"unexpected end of document, expected '{key}:'", i + 1)
    line = lines[i]
    prefix = key + ":"
    if not line.startswith(prefix):
        raise ParseError(f"expected '{key}:' field", i + 1, 1)
    return line[len(prefix):].strip()


def _json_field(lines, i, key):
    raw = _field(lines, i, key)
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON in '{key}': {exc.msg}", i + 1, len(key) + 2 + exc.pos) from None


def loads(text: str) -> SimplicialComplex:
    """Inverse of :func:`dumps`; raises ParseError with a 1-based line number."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    raw = _field(lines, 0, "format_version")
    try:
        version = int(raw)
    except ValueError:
        raise ParseError(f"format version {raw!r} is not an integer", 1) from None
    if version != FORMAT_VERSION:
        raise FormatVersionError(f"document has format version {version}, this library reads {FORMAT_VERSION}")
    name = _json_field(lines, 1, "name")
    if not isinstance(name, str):
        raise ParseError("name must be a JSON string", 2)
    labels_raw = _json_field(lines, 2, "labels")
    if not isinstance(labels_raw, list):
        raise ParseError("labels must be a JSON list", 3)
    labels = tuple(_label_from_json(x) for x in labels_raw)
    if len(set(labels)) != len(labels):
        raise ParseError("labels are not distinct", 3)
    count_raw = _field(lines, 3, "facets")
    if not count_raw.isdigit():
        raise ParseError(f"facet count {count_raw!r} is not a non-negative integer", 4)
    count = int(count_raw)
    n = len(labels)
    facets = []
    for k in range(count):
        ln = 4 + k
        if ln >= len(lines):
            raise ParseError(f"document ends after {k} of {count} facets", ln + 1)
        try:
            f = tuple(int(x) for x in lines[ln].split())
        except ValueError:
            raise ParseError("facet line must hold integers", ln + 1) from None
        if not f or any(a >= b for a, b in zip(f, f[1:])):
            raise ParseError("facet ids must be strictly increasing", ln + 1)
        if f[0] < 1 or f[-1] > n:
            raise ParseError(f"facet id outside 1..{n}", ln + 1)
        if facets and f <= facets[-1]:
            raise ParseError("facet lines are not in lexicographic order", ln + 1)
        facets.append(f)
    ln = 4 + count
    props = _json_field(lines, ln, "properties")
    if not isinstance(props, dict):
        raise ParseError("properties must be a JSON object", ln + 1)
    if ln + 1 >= len(lines) or lines[ln + 1] != "end":
        raise ParseError("missing 'end' line", ln + 2)
    if ln + 2 != len(lines):
        raise ParseError("trailing content after 'end'", ln + 3)
    if {v for f in facets for v in f} != set(range(1, n + 1)):
        raise ParseError("some label is not used by any facet", 3)
    if len(_maximal(set(facets))) != len(facets):
        raise ParseError("a facet is contained in another facet", 5)
    K = SimplicialComplex(facets, labels, name=name)
    try:
        decoded = decode_properties(props)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad property value: {exc}", ln + 1) from None
    for key, value in decoded.items():
        K.cache.put(key, value)
    return K


def load(path) -> SimplicialComplex:
    return loads(Path(path).read_text(encoding="utf-8"))


# -- TOPAZ-compatible text -----------------------------------------------------

def _plain_label(x) -> str:
    s = "".join(str(x).split())
    return s or "_"


def export_topaz(K: SimplicialComplex) -> str:
    """Facets as ``{a b c}`` lines over 0-based ids, followed by the labels."""
    lines = ["_type SimplicialComplex", "", "FACETS"]
    lines.extend("{" + " ".join(str(v - 1) for v in f) + "}" for f in K.facets)
    lines += ["", "VERTEX_LABELS", " ".join(_plain_label(x) for x in K.labels), ""]
    return "\n".join(lines) + "\n"


def _topaz_label(tok: str):
    try:
        return int(tok)
    except ValueError:
        return tok


def import_topaz(text: str, name: str = "") -> SimplicialComplex:
    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for no, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line:
            current = None
            continue
        if line.startswith("_type"):
            continue
        if line.startswith("#"):
            continue
        if current is None:
            if not line.replace("_", "").isalnum() or not line.isupper():
                raise ParseError(f"expected a section name, found {line!r}", no, 1)
            current = line
            sections.setdefault(current, [])
            continue
        sections[current].append((no, line))
    if "FACETS" not in sections:
        raise ParseError("no FACETS section")
    facets = []
    n_max = -1
    for no, line in sections["FACETS"]:
        if not (line.startswith("{") and line.endswith("}")):
            raise ParseError("facet line must be enclosed in braces", no, 1)
        try:
            ids = [int(x) for x in line[1:-1].split()]
        except ValueError:
            raise ParseError("facet line must hold integers", no, 2) from None
        if not ids:
            raise ParseError("empty facet", no, 1)
        if len(set(ids)) != len(ids):
            raise ParseError("facet repeats a vertex id", no, 1)
        if min(ids) < 0:
            raise ParseError("negative vertex id", no, 1)
        n_max = max(n_max, max(ids))
        facets.append(ids)
    labels = None
    if "VERTEX_LABELS" in sections:
        toks = [t for _, line in sections["VERTEX_LABELS"] for t in line.split()]
        if len(toks) != n_max + 1:
            no = sections["VERTEX_LABELS"][0][0] if sections["VERTEX_LABELS"] else None
            raise ParseError(f"{len(toks)} labels for {n_max + 1} vertices", no)
        labels = [_topaz_label(t) for t in toks]
        if len(set(labels)) != len(labels):
            raise ParseError("vertex labels are not distinct", sections["VERTEX_LABELS"][0][0])
    if labels is None:
        return from_facets([[v + 1 for v in f] for f in facets], name)
    return from_facets([[labels[v] for v in f] for f in facets], name)


# -- typeset table -----------------------------------------------------------------

_TEX_SPECIAL = {"\\": r"\textbackslash{}", "{": r"\{", "}": r"\}", "_": r"\_", "^": r"\^{}",
                "&": r"\&", "%": r"\%", "$": r"\$", "#": r"\#", "~": r"\~{}"}


def _tex(s: str) -> str:
    return "".join(_TEX_SPECIAL.get(c, c) for c in s)


def export_typeset_table(K: SimplicialComplex) -> str:
    """LaTeX tabular of the facets (internal ids) plus a legend of labels."""
    out = []
    if K.name:
        out.append(f"% {K.name}")
    out += [r"\begin{tabular}{r|l}", r"\# & facet \\", r"\hline"]
    for i, f in enumerate(K.facets, start=1):
        out.append(f"{i} & $\\{{{','.join(map(str, f))}\\}}$ \\\\")
    out.append(r"\end{tabular}")
    out += ["", r"\begin{tabular}{r|l}", r"id & label \\", r"\hline"]
    for v in K.vertices:
        out.append(f"{v} & {_tex(str(K.label_of(v)))} \\\\")
    out.append(r"\end{tabular}")
    return "\n".join(out) + "\n"
