from turbo_lerch.catalog._catalog import (
    SCHEMA_VERSION,
    Anchor,
    CatalogFile,
    IdentityInstance,
    bind,
    check_entry,
    default_catalog_path,
    dump_catalog,
    list_entries,
    load_catalog,
    parse_catalog,
    save_catalog,
)

__all__ = [
    "SCHEMA_VERSION",
    "Anchor",
    "CatalogFile",
    "IdentityInstance",
    "bind",
    "check_entry",
    "default_catalog_path",
    "dump_catalog",
    "list_entries",
    "load_catalog",
    "parse_catalog",
    "save_catalog",
]
