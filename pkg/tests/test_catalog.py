import json

import pytest

from turbo_lerch.catalog import (
    SCHEMA_VERSION,
    bind,
    check_entry,
    dump_catalog,
    list_entries,
    load_catalog,
    parse_catalog,
    save_catalog,
)
from turbo_lerch.core.errors import CatalogError, UnknownFamilyError, ValidityError
from turbo_lerch.core.quad import Side
from turbo_lerch.identities.registry import known_ids


@pytest.fixture(scope="module")
def catalog():
    return load_catalog()


def document(*entries):
    return json.dumps({"schema_version": SCHEMA_VERSION, "entries": list(entries)}, indent=2)


def thm2_entry(**changes):

    raw = {
        "id": "thm2",
        "family": "power-logk",
        "defaults": {"a": 1, "b": 1, "k": 1, "m": 0.5, "n": 1, "v": 2},
        "validity": ["re_m_pos", "re_v_pos", "m_lt_nv", "n_nonneg"],
        "anchor": {"section": "Theorem 2", "quote": "when $Re(b)<0$, then there exists"},
    }
    raw.update(changes)
    return raw


def test_bundled_catalog_covers_every_evaluator(catalog):

    assert sorted(catalog.ids) == known_ids()
    assert len(set(catalog.ids)) == len(catalog)


def test_bundled_defaults_are_clean(catalog):

    problems = {entry.id: check_entry(entry) for entry in catalog}
    assert {k: v for k, v in problems.items() if v is not None} == {}


def test_every_entry_has_an_anchor(catalog):

    for entry in catalog:
        assert entry.anchor.quote.strip(), entry.id
        assert entry.anchor.section, entry.id


def test_dump_and_parse_round_trip(catalog, tmp_path):

    path = tmp_path / "catalog.json"
    save_catalog(catalog, path)
    again = load_catalog(path)
    assert again.ids == catalog.ids
    assert dump_catalog(again) == dump_catalog(catalog)
    assert again.path == path


def test_errata_multipliers(catalog):

    assert catalog.get("malm1-diff").erratum_multiplier == 1
    assert catalog.get("brychkov-6.15").erratum_multiplier == -1
    assert catalog.get("brychkov-6.15-series").erratum_multiplier == 1


def test_sides_and_kinds(catalog):

    assert catalog.get("eq1").side is Side.ABOVE
    assert catalog.get("poly-ex2-case1").side is Side.BELOW
    assert catalog.get("thm1").side is Side.NONE
    assert catalog.get("lerch-transformation").kind == "series"
    assert catalog.get("lerch-transformation").singularities() == []
    assert catalog.get("thm1").kind == "integral"


def test_expected_nonconvergent_entries(catalog):

    flagged = sorted(e.id for e in catalog if e.expected != "pass")
    assert flagged == ["poch-malm-ex1-case", "poly-ex2-case3", "thm2-loglog-k-neg1"]


def test_unknown_family():
    with pytest.raises(UnknownFamilyError):
        parse_catalog(document(thm2_entry(family="no-such-family")))


def test_family_must_match_evaluator():

    with pytest.raises(CatalogError) as info:
        parse_catalog(document(thm2_entry(family="power-loglog")))
    assert info.value.field == "family"


def test_duplicate_id_reports_line():

    with pytest.raises(CatalogError) as info:
        parse_catalog(document(thm2_entry(), thm2_entry()))
    assert "duplicate" in str(info.value)
    assert info.value.line is not None


def test_invalid_json_reports_line():

    with pytest.raises(CatalogError) as info:
        parse_catalog('{\n  "schema_version": 1,\n  "entries": [\n')
    assert info.value.line is not None


def test_schema_version_is_checked():

    with pytest.raises(CatalogError) as info:
        parse_catalog(json.dumps({"schema_version": 99, "entries": []}))
    assert info.value.field == "schema_version"


@pytest.mark.parametrize(
    "changes,field",
    [
        ({"validity": ["no-such-tag"]}, "validity"),
        ({"side": "sideways"}, "side"),
        ({"sampler": {"m": [0.2]}}, "sampler"),
        ({"defaults": [1, 2]}, "defaults"),
        ({"anchor": {"section": "Theorem 2"}}, "anchor"),
    ],
)
def test_malformed_fields(changes, field):

    with pytest.raises(CatalogError) as info:
        parse_catalog(document(thm2_entry(**changes)))
    assert info.value.field == field


def test_missing_required_member():

    raw = thm2_entry()
    del raw["anchor"]
    with pytest.raises(CatalogError) as info:
        parse_catalog(document(raw))
    assert info.value.field == "anchor"


def test_defaults_must_satisfy_validity():
    with pytest.raises(ValidityError):
        parse_catalog(document(thm2_entry(defaults={"a": 1, "b": 1, "k": 1, "m": -0.5, "n": 1, "v": 2})))


def test_bind_overrides(catalog):

    entry = catalog.get("thm2")
    p = bind(entry, {"m": "0.75", "a": {"re": 1.5, "im": 0}})
    assert p.m == 0.75
    assert p.a == 1.5
    assert p.v == entry.default_params.v


def test_bind_rejects_unknown_and_invalid(catalog):

    entry = catalog.get("thm2")
    with pytest.raises(CatalogError):
        bind(entry, {"zz": 1})
    with pytest.raises(ValidityError):
        bind(entry, {"m": -1})
    with pytest.raises(CatalogError):
        bind(entry, {"n": 1.5})


def test_list_entries_filters(catalog):

    tables = list_entries(catalog, "table")
    assert len(tables) == 25
    assert all("table" in e.tags for e in tables)
    malm1 = list_entries(catalog, "malm1")
    assert all(e.id.startswith("malm1") for e in malm1)
    assert len(malm1) == 10
    assert [e.id for e in list_entries(catalog, "diekama")] == ["eq-diekama", "eq-diekama-zeta3"]
    assert [e.id for e in list_entries(catalog, lambda e: e.kind == "series")] == sorted(
        e.id for e in catalog if e.kind == "series"
    )
    assert [e.id for e in list_entries(catalog)] == sorted(catalog.ids)


def test_get_unknown_id(catalog):
    with pytest.raises(CatalogError):
        catalog.get("no-such-entry")


def test_malm1_diff_only_at_n_zero(catalog):

    entry = catalog.get("malm1-diff")
    assert bind(entry).integer("n") == 0
    with pytest.raises(ValidityError):
        bind(entry, {"n": 1})


def test_malm_la1_ab1_defaults_bind_a_and_b(catalog):

    p = catalog.get("malm-la1-ab1").default_params
    assert p.a == 1 and p.b == 1
