import pytest

from simpkit.complex import SimplicialComplex, euler_characteristic, f_vector, from_facets, simplex_boundary
from simpkit.errors import FormatVersionError, ParseError
from simpkit.homology import homology, intersection_form
from simpkit.interchange import (dumps, export_topaz, export_typeset_table, import_topaz, load, loads,
                                 save)
from simpkit.matching import is_isomorphic


def test_native_round_trip_byte_exact(corpus):
    for K in corpus:
        text = dumps(K)
        assert dumps(loads(text)) == text, K.name


def test_native_round_trip_k3_with_properties(k3, tmp_path):
    homology(k3)
    intersection_form(k3)
    f_vector(k3)
    p = tmp_path / "k3.txt"
    save(k3, p)
    back = load(p)
    assert back.facets == k3.facets and back.labels == k3.labels and back.name == "K3 surface"
    assert "homology" in back.cache and "intersection_form" in back.cache
    assert [g.rank for g in back.cache.get("homology")] == [0, 0, 22, 0, 1]
    assert back.cache.get("intersection_form").parity == 0
    assert p.read_text() == dumps(back)


def test_labels_survive():
    K = from_facets([("a", "b"), ("b", (1, "c")), ("a", (1, "c"))], name="tri")
    back = loads(dumps(K))
    assert back.labels == K.labels
    assert list(back.labeled_facets()) == list(K.labeled_facets())


def test_layout(tetra):
    text = dumps(tetra, properties=False)
    lines = text.splitlines()
    assert lines[0] == "format_version: 1"
    assert lines[3] == "facets: 4"
    assert lines[4:8] == ["1 2 3", "1 2 4", "1 3 4", "2 3 4"]
    assert lines[-1] == "end"


def test_truncated_document(tetra):
    lines = dumps(tetra).splitlines(keepends=True)
    for cut in range(1, len(lines)):
        with pytest.raises(ParseError) as exc:
            loads("".join(lines[:cut]))
        assert exc.value.line is not None


@pytest.mark.parametrize("bad,line", [
    ("format_version: 1\nname: \"x\"\nlabels: [1,2]\nfacets: 1\n2 1\nproperties: {}\nend\n", 5),
    ("format_version: 1\nname: \"x\"\nlabels: [1,2]\nfacets: 1\n1 3\nproperties: {}\nend\n", 5),
    ("format_version: 1\nname: x\nlabels: [1,2]\nfacets: 1\n1 2\nproperties: {}\nend\n", 2),
    ("format_version: 1\nname: \"x\"\nlabels: [1,1]\nfacets: 1\n1 2\nproperties: {}\nend\n", 3),
    ("format_version: 1\nname: \"x\"\nlabels: [1,2]\nfacets: 1\n1 2\nproperties: {}\nend\nmore\n", 8),
])
def test_malformed_lines(bad, line):
    with pytest.raises(ParseError) as exc:
        loads(bad)
    assert exc.value.line == line


def test_version_mismatch(tetra):
    text = dumps(tetra).replace("format_version: 1", "format_version: 2", 1)
    with pytest.raises(FormatVersionError):
        loads(text)


def test_topaz_export_layout():
    text = export_topaz(simplex_boundary(2))
    facet_lines = [ln for ln in text.splitlines() if ln.startswith("{")]
    assert facet_lines == ["{0 1 2}", "{0 1 3}", "{0 2 3}", "{1 2 3}"]


def test_topaz_repeated_vertex():
    with pytest.raises(ParseError) as exc:
        import_topaz("FACETS\n{0 1 2}\n{0 1 1}\n")
    assert exc.value.line == 3


def test_topaz_missing_section():
    with pytest.raises(ParseError):
        import_topaz("_type SimplicialComplex\n")


def test_topaz_round_trip_corpus(corpus):
    for K in corpus:
        back = import_topaz(export_topaz(K))
        assert is_isomorphic(back, K), K.name
        assert back.labels == K.labels


def test_topaz_without_labels():
    K = import_topaz("FACETS\n{0 1}\n{1 2}\n{0 2}\n")
    assert f_vector(K) == [3, 3] and euler_characteristic(K) == 0


def test_typeset_single_triangle():
    text = export_typeset_table(from_facets([(1, 2, 3)]))
    rows = [ln for ln in text.splitlines() if ln.startswith("1 &")]
    assert len(rows) == 2  # one facet row, one legend row
    assert text.count(r"\begin{tabular}") == 2


def test_typeset_k3(k3):
    text = export_typeset_table(k3)
    first, second = text.split(r"\end{tabular}")[:2]
    assert first.count("\\\\") - 1 == 288
    assert second.count("\\\\") - 1 == 16


def test_typeset_empty_complex():
    text = export_typeset_table(SimplicialComplex([], []))
    first, second = text.split(r"\end{tabular}")[:2]
    assert first.count("\\\\") == 1 and second.count("\\\\") == 1


def test_typeset_escapes_labels():
    text = export_typeset_table(from_facets([("a_1", "b&c")]))
    assert r"a\_1" in text and r"b\&c" in text
