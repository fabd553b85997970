import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple, Union

from turbo_lerch.core.errors import CatalogError, TurboLerchError, UnknownFamilyError
from turbo_lerch.core.quad import Side
from turbo_lerch.identities.integrands import FAMILIES, Singularity
from turbo_lerch.identities.params import CONDITIONS, ParamSet, check_validity, parse_params
from turbo_lerch.identities.registry import EVALUATORS, lhs_integrand
from turbo_lerch.utils.log import get_logger

logger = get_logger(__name__)

SCHEMA_VERSION = 1
SERIES_FAMILY = "series"

_REQUIRED = ("id", "family", "defaults", "anchor")


@dataclass(frozen=True)
class Anchor:
    """Where an identity lives in the source text, plus a verbatim quote of it."""

    section: str
    quote: str

    def to_json(self) -> Dict[str, str]:
        return {"section": self.section, "quote": self.quote}


@dataclass(frozen=True)
class IdentityInstance:
    """
    One catalog entry. The id selects the right-hand side evaluator, `family`
    the left-hand side integrand (or "series" when the left side is a second
    finite expression).
    """

    id: str
    family: str
    default_params: ParamSet
    anchor: Anchor
    validity: Tuple[str, ...] = ()
    side: Side = Side.NONE
    erratum_multiplier: complex = 1 + 0j
    tags: Tuple[str, ...] = ()
    sampler: Dict[str, Tuple[float, float]] = field(default_factory=dict)
    integers: Tuple[str, ...] = ()
    expected: str = "pass"
    notes: str = ""

    @property
    def kind(self) -> str:
        return "series" if self.family == SERIES_FAMILY else "integral"

    def singularities(self, params: Optional[ParamSet] = None) -> List[Singularity]:
        """Path singularities of the left-hand side at `params` (defaults if omitted)."""

        if self.kind == "series":
            return []
        return list(lhs_integrand(self.id, params or self.default_params, self.side).singularities)

    def to_json(self) -> Dict[str, object]:

        out: Dict[str, object] = {
            "id": self.id,
            "family": self.family,
            "defaults": self.default_params.to_json(),
            "validity": list(self.validity),
            "side": self.side.value,
            "anchor": self.anchor.to_json(),
        }
        if self.erratum_multiplier != 1:
            out["erratum"] = {"re": self.erratum_multiplier.real, "im": self.erratum_multiplier.imag}
        if self.tags:
            out["tags"] = list(self.tags)
        if self.sampler:
            out["sampler"] = {k: [lo, hi] for k, (lo, hi) in sorted(self.sampler.items())}
        if self.integers:
            out["integers"] = list(self.integers)
        if self.expected != "pass":
            out["expected"] = self.expected
        if self.notes:
            out["notes"] = self.notes
        return out


@dataclass(frozen=True)
class CatalogFile:
    schema_version: int
    entries: Tuple[IdentityInstance, ...]
    path: Optional[Path] = None

    def __iter__(self) -> Iterator[IdentityInstance]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def ids(self) -> List[str]:
        return [e.id for e in self.entries]

    def get(self, entry_id: str) -> IdentityInstance:

        for entry in self.entries:
            if entry.id == entry_id:
                return entry
        raise CatalogError(f"no catalog entry with id '{entry_id}'", field="id")

    def to_json(self) -> Dict[str, object]:
        return {"schema_version": self.schema_version, "entries": [e.to_json() for e in self.entries]}


def default_catalog_path() -> Path:
    return Path(str(resources.files("turbo_lerch.catalog").joinpath("data", "catalog.json")))


def _line_of(text: str, entry_id: str) -> Optional[int]:
    """Line of the `"id": "<entry_id>"` member, for error messages."""

    needle = f'"id": "{entry_id}"'
    for number, line in enumerate(text.splitlines(), start=1):
        if needle in line:
            return number
    return None


def _complex(raw: object, name: str, line: Optional[int]) -> complex:

    if isinstance(raw, Mapping):
        try:
            return complex(float(raw.get("re", 0.0)), float(raw.get("im", 0.0)))
        except (TypeError, ValueError) as exc:
            raise CatalogError(f"bad complex value {raw!r}", line=line, field=name) from exc
    try:
        return complex(raw)
    except (TypeError, ValueError) as exc:
        raise CatalogError(f"bad number {raw!r}", line=line, field=name) from exc


def _parse_entry(raw: Mapping[str, object], line: Optional[int]) -> IdentityInstance:

    # 1. Shape
    for name in _REQUIRED:
        if name not in raw:
            raise CatalogError(f"entry is missing '{name}'", line=line, field=name)
    entry_id = str(raw["id"])
    family = str(raw["family"])

    # 2. Resolve family and evaluator
    if family != SERIES_FAMILY and family not in FAMILIES:
        raise UnknownFamilyError(family)
    evaluator = EVALUATORS.get(entry_id)
    if evaluator is None:
        raise CatalogError(f"no evaluator registered for '{entry_id}'", line=line, field="id")
    if (evaluator.family or SERIES_FAMILY) != family:
        raise CatalogError(
            f"'{entry_id}' is declared as {family} but evaluates as {evaluator.family or SERIES_FAMILY}",
            line=line,
            field="family",
        )

    # 3. Fields
    defaults = raw["defaults"]
    if not isinstance(defaults, Mapping):
        raise CatalogError("defaults must be an object", line=line, field="defaults")
    params = parse_params(defaults)

    validity = tuple(str(t) for t in raw.get("validity", ()))
    for tag in validity:
        if tag not in CONDITIONS:
            raise CatalogError(f"unknown validity condition '{tag}'", line=line, field="validity")

    anchor_raw = raw["anchor"]
    if not isinstance(anchor_raw, Mapping) or "quote" not in anchor_raw:
        raise CatalogError("anchor needs a section and a quote", line=line, field="anchor")

    try:
        side = Side(raw.get("side", Side.NONE.value))
    except ValueError as exc:
        raise CatalogError(f"bad side {raw.get('side')!r}", line=line, field="side") from exc

    sampler = {}
    for key, bounds in dict(raw.get("sampler", {})).items():
        if not isinstance(bounds, (list, tuple)) or len(bounds) != 2:
            raise CatalogError(f"sampler range for '{key}' must be [lo, hi]", line=line, field="sampler")
        sampler[str(key)] = (float(bounds[0]), float(bounds[1]))

    entry = IdentityInstance(
        id=entry_id,
        family=family,
        default_params=params,
        anchor=Anchor(str(anchor_raw.get("section", "")), str(anchor_raw["quote"])),
        validity=validity,
        side=side,
        erratum_multiplier=_complex(raw.get("erratum", 1), "erratum", line),
        tags=tuple(str(t) for t in raw.get("tags", ())),
        sampler=sampler,
        integers=tuple(str(t) for t in raw.get("integers", ())),
        expected=str(raw.get("expected", "pass")),
        notes=str(raw.get("notes", "")),
    )

    # 4. Defaults must satisfy the entry's own conditions
    check_validity(params, validity)
    return entry


def parse_catalog(text: str, path: Optional[Path] = None) -> CatalogFile:

    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CatalogError(f"invalid JSON: {exc.msg}", line=exc.lineno) from exc

    if not isinstance(document, Mapping):
        raise CatalogError("catalog root must be an object", line=1)
    version = document.get("schema_version")
    if version != SCHEMA_VERSION:
        raise CatalogError(f"unsupported schema_version {version!r}", line=1, field="schema_version")

    entries = []
    seen = set()
    for raw in document.get("entries", []):
        if not isinstance(raw, Mapping):
            raise CatalogError("entries must be objects", field="entries")
        line = _line_of(text, str(raw.get("id", "")))
        entry = _parse_entry(raw, line)
        if entry.id in seen:
            raise CatalogError(f"duplicate id '{entry.id}'", line=line, field="id")
        seen.add(entry.id)
        entries.append(entry)

    logger.debug(f"Loaded {len(entries)} catalog entries from {path or '<text>'}")
    return CatalogFile(SCHEMA_VERSION, tuple(entries), path)


def load_catalog(path: Union[str, Path, None] = None) -> CatalogFile:
    """Reads and validates a catalog file; the bundled one when `path` is None."""

    path = Path(path) if path else default_catalog_path()
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
    return parse_catalog(text, path)


def dump_catalog(catalog: CatalogFile) -> str:
    return json.dumps(catalog.to_json(), indent=2, ensure_ascii=False) + "\n"


def save_catalog(catalog: CatalogFile, path: Union[str, Path]):
    Path(path).write_text(dump_catalog(catalog), encoding="utf-8")


def bind(entry: IdentityInstance, overrides: Optional[Mapping[str, object]] = None) -> ParamSet:
    """Entry defaults with `overrides` applied, re-checked against the entry's conditions."""

    params = entry.default_params
    if overrides:
        changes = parse_params(overrides)
        unknown = sorted(set(changes) - set(params))
        if unknown:
            raise CatalogError(f"'{entry.id}' has no parameter(s) {', '.join(unknown)}", field="params")
        params = params.replace(**changes)
        for name in entry.integers:
            params.integer(name)
    check_validity(params, entry.validity)
    return params


EntryFilter = Union[str, Callable[[IdentityInstance], bool], None]


def list_entries(catalog: CatalogFile, filter: EntryFilter = None) -> List[IdentityInstance]:
    """
    Entries ordered by id. A string filter matches a tag, a family or an id
    prefix; a callable is used as the predicate itself.
    """
    if filter is None or filter == "":
        chosen = list(catalog.entries)
    elif callable(filter):
        chosen = [e for e in catalog.entries if filter(e)]
    else:
        chosen = [e for e in catalog.entries if filter in e.tags or e.family == filter or e.id.startswith(filter)]
    return sorted(chosen, key=lambda e: e.id)


def check_entry(entry: IdentityInstance) -> Optional[str]:
    """None when the defaults evaluate cleanly, otherwise the error text."""

    try:
        bind(entry)
        entry.singularities()
    except TurboLerchError as exc:
        return str(exc)
    return None
