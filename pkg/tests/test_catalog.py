import json
import random
from math import comb

import pytest

from simpkit.catalog import (BUNDLED_PATH, ENV_VAR, Catalog, CatalogEntry, compute_properties, default_catalog,
                             g_vector, h_vector, load_catalog, load_entry, search_by_attribute, search_by_name)
from simpkit.catalog.query import And, Compare, Or, evaluate, format_query, parse_query
from simpkit.complex import f_vector, from_facets
from simpkit.errors import CatalogError, QueryIndexError, QueryNameError, QuerySyntaxError
from simpkit.interchange import dumps, loads


def names(hits):
    return [n for _, n in hits]


def test_bundled_has_session_entries(catalog):
    assert 25 <= len(catalog) <= 40
    for nm in ("K3 surface", "CP^2 (VT)", "RP^2 (VT)"):
        assert catalog.by_name(nm)


def test_search_by_name(catalog):
    assert names(search_by_name(catalog, "K3")) == ["K3 surface"]
    assert len(search_by_name(catalog, "")) == len(catalog)
    assert search_by_name(catalog, "no-such-name") == []
    assert search_by_name(catalog, "k3") == []  # case-sensitive
    ids = [i for i, _ in search_by_name(catalog, "S^")]
    assert ids == sorted(ids)


def test_session_query(catalog):
    assert names(search_by_attribute(catalog, "Dim=4 and F[3]=Binomial(F[1],3)")) == ["CP^2 (VT)", "K3 surface"]
    assert "K3 surface" in names(search_by_attribute(catalog, "Dim=4 and Chi=24"))
    assert search_by_attribute(catalog, "Dim<0") == []


def test_query_shapes():
    q = parse_query("Dim=4 and F[3]=Binomial(F[1],3)")
    assert isinstance(q, And) and len(q.parts) == 2
    assert isinstance(parse_query("Chi=24"), Compare)
    assert isinstance(parse_query("Dim=2 or Dim=3 and Chi=0"), Or)
    assert isinstance(parse_query("(Dim=2 or Dim=3) and Chi=0"), And)
    assert isinstance(parse_query("(F[1]+1)*2>10"), Compare)


def test_precedence():
    props = {"Dim": 2, "F": [3, 3]}
    assert evaluate(parse_query("1+2*3=7"), props)
    assert evaluate(parse_query("2*3-1=5"), props)
    assert evaluate(parse_query("10-2-3=5"), props)
    assert evaluate(parse_query("Chi=-2 or F[1]*F[2]=9"), props)
    assert evaluate(parse_query("Binomial(5,2)=10 and Binomial(2,5)=0"), {})


def test_whitespace_insensitive():
    a = search_by_attribute(default_catalog(), "Dim = 4  and F[ 3 ] = Binomial( F[1] , 3 )")
    b = search_by_attribute(default_catalog(), "Dim=4 and F[3]=Binomial(F[1],3)")
    assert a == b


@pytest.mark.parametrize("text,pos", [("Dim=", 4), ("Dim 4", 4), ("F[1=2", 3), ("Dim=4 and", 9),
                                      ("Dim=4 extra", 6), ("Dim=4 @", 6), ("F=3", 1)])
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(QuerySyntaxError) as exc:
        parse_query(text)
    assert exc.value.position == pos


def test_unknown_name():
    with pytest.raises(QueryNameError):
        parse_query("Genus=1")
    with pytest.raises(QueryNameError):
        parse_query("dim=4")  # keywords are case-sensitive


def test_index_below_one(catalog):
    with pytest.raises(QueryIndexError):
        search_by_attribute(catalog, "F[0]=1")


def test_missing_property_or_index_is_skipped(catalog):
    # F[6] exists only for complexes of dimension five and up
    assert set(names(search_by_attribute(catalog, "F[6]>0"))) == {
        e.name for e in catalog if e.properties["Dim"] >= 5}
    cat = Catalog([CatalogEntry(1, "bare", ((1, 2),), {"Dim": 1})])
    assert search_by_attribute(cat, "Chi=0") == []
    assert search_by_attribute(cat, "Dim=1") == [(1, "bare")]


def test_homology_attribute(catalog):
    assert names(search_by_attribute(catalog, "Dim=4 and Homology[3]=22")) == ["K3 surface"]


def _random_cmp(rng):
    attr = rng.choice(["Dim", "Chi", "F[1]", "F[2]", "F[3]", "H[1]", "G[1]", "Neighborliness", "Homology[2]"])
    op = rng.choice(["=", "<", ">", "<=", ">="])
    return f"{attr}{op}{rng.randint(-2, 30)}"


def test_query_algebra_laws(catalog):
    rng = random.Random(99)
    for _ in range(100):
        a, b = _random_cmp(rng), _random_cmp(rng)
        if rng.random() < 0.3:
            a = f"({a} or {_random_cmp(rng)})"
        sa = {i for i, _ in search_by_attribute(catalog, a)}
        sb = {i for i, _ in search_by_attribute(catalog, b)}
        assert {i for i, _ in search_by_attribute(catalog, f"{a} and {b}")} == sa & sb
        assert {i for i, _ in search_by_attribute(catalog, f"{a} or {b}")} == sa | sb


def test_format_query_round_trip():
    rng = random.Random(3)
    for _ in range(50):
        text = f"{_random_cmp(rng)} and ({_random_cmp(rng)} or {_random_cmp(rng)})"
        q = parse_query(text)
        assert parse_query(format_query(q)) == q


def test_h_and_g_vectors():
    # boundary of the 3-simplex has h = (1, 1, 1, 1)
    assert h_vector([4, 6, 4]) == [1, 1, 1]
    assert g_vector([4, 6, 4]) == [0]
    # octahedron
    assert h_vector([6, 12, 8]) == [3, 3, 1]
    assert g_vector([6, 12, 8]) == [2]


def test_stored_g_h_consistent(catalog):
    for e in catalog:
        f, h, g = e.properties["F"], e.properties["H"], e.properties["G"]
        d = len(f) - 1
        ff = [1] + f
        # inverse relation: f_{j-1} = sum_i C(d+1-i, j-i) h_i
        hh = [1] + h
        for j in range(d + 2):
            assert ff[j] == sum(comb(d + 1 - i, j - i) * hh[i] for i in range(j + 1))
        assert g == [hh[k] - hh[k - 1] for k in range(1, (d + 1) // 2 + 1)]


def test_precomputation_honesty_sample(catalog):
    rng = random.Random()
    sample = rng.sample(list(catalog), 6)
    for e in sample:
        assert compute_properties(from_facets(e.facets)) == e.properties, e.name


def test_load_entry(catalog):
    k3 = catalog.by_name("K3 surface")
    K = load_entry(catalog, k3.id)
    assert K.name == "K3 surface"
    assert "homology" in K.cache and "f_vector" in K.cache
    assert f_vector(K) == [16, 120, 560, 720, 288]
    assert load_entry(catalog, k3.id).facets == K.facets
    with pytest.raises(KeyError):
        load_entry(catalog, 999999)


def test_load_entry_isomorphic_to_construction(catalog, k3):
    from simpkit.matching import is_isomorphic
    assert is_isomorphic(load_entry(catalog, catalog.by_name("K3 surface").id), k3)


def test_entries_round_trip(catalog):
    for e in catalog:
        K = load_entry(catalog, e.id)
        assert loads(dumps(K)).facets == e.facets
    again = json.loads(catalog.dumps())
    assert [tuple(map(tuple, x["facets"])) for x in again["entries"]] == [e.facets for e in catalog]


def test_empty_catalog_file(tmp_path):
    p = tmp_path / "empty.json"
    p.write_text("")
    cat = load_catalog(p)
    assert len(cat) == 0 and search_by_name(cat, "") == []


def test_spot_check_detects_tampering(tmp_path):
    doc = json.loads(BUNDLED_PATH.read_text())
    doc["entries"][0]["properties"]["Chi"] += 1
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    with pytest.raises(CatalogError, match=doc["entries"][0]["name"].replace("^", r"\^")):
        load_catalog(p)


def test_malformed_entry_named(tmp_path):
    doc = {"format_version": 1, "entries": [{"id": 7, "name": "broken", "facets": [[2, 1]]}]}
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    with pytest.raises(CatalogError, match="broken"):
        load_catalog(p)
    doc["format_version"] = 9
    p.write_text(json.dumps(doc))
    with pytest.raises(CatalogError, match="version"):
        load_catalog(p)


def test_env_override(tmp_path, monkeypatch):
    small = Catalog([CatalogEntry(3, "edge", ((1, 2),), compute_properties(from_facets([(1, 2)])))])
    p = tmp_path / "c.json"
    p.write_text(small.dumps())
    monkeypatch.setenv(ENV_VAR, str(p))
    assert names(search_by_name(default_catalog(), "")) == ["edge"]


def test_duplicate_names_rejected():
    with pytest.raises(CatalogError):
        Catalog([CatalogEntry(1, "a", ((1,),)), CatalogEntry(2, "a", ((1,),))])


def test_build_is_reproducible():
    from simpkit.catalog.build import build

    assert build().dumps() == BUNDLED_PATH.read_text()
