import json
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from turbo_lerch.core.errors import TurboLerchError
from turbo_lerch.core.quad import QuadratureSpec
from turbo_lerch.utils.log import get_logger

logger = get_logger(__name__)

ENV_VAR = "TURBO_LERCH_SETTINGS"

DEFAULTS: Dict[str, Any] = {
    "verify/rel_tol": 1e-6,
    "verify/abs_tol": 1e-9,
    "verify/draws": 20,
    "verify/seed": 42,
    "verify/jobs": 0,
    "verify/format": "json",
    "verify/max_skips": 3,
    "quad/rule": "de",
    "quad/rel_tol": 1e-10,
    "quad/abs_tol": 1e-14,
    "quad/max_depth": 30,
    "lerch/series_cap": 1_000_000,
}


class SettingsError(TurboLerchError):
    pass


class Settings:
    """
    Slash-keyed settings store. Lookups fall back to DEFAULTS, and every
    stored value is coerced to the type of its default.
    """

    def __init__(self, values: Optional[Mapping[str, Any]] = None):

        self._values: Dict[str, Any] = dict(DEFAULTS)
        if values:
            self.update(values)

    def value(self, key: str, default: Any = None, type: Optional[type] = None) -> Any:

        raw = self._values.get(key, default)
        if type is None or raw is None:
            return raw
        try:
            return type(raw)
        except (TypeError, ValueError) as exc:
            raise SettingsError(f"setting '{key}' = {raw!r} is not a {type.__name__}") from exc

    def set_value(self, key: str, value: Any):

        if key not in DEFAULTS:
            raise SettingsError(f"unknown setting '{key}'")
        if value is None:
            return
        kind = builtin_type(DEFAULTS[key])
        try:
            self._values[key] = kind(value)
        except (TypeError, ValueError) as exc:
            raise SettingsError(f"setting '{key}' expects {kind.__name__}, got {value!r}") from exc

    def update(self, values: Mapping[str, Any]):
        for key, value in values.items():
            self.set_value(key, value)

    def as_dict(self) -> Dict[str, Any]:
        return dict(sorted(self._values.items()))

    def quadrature_spec(self) -> QuadratureSpec:

        return QuadratureSpec(
            rel_tol=self.value("quad/rel_tol", type=float),
            abs_tol=self.value("quad/abs_tol", type=float),
            max_refinement_depth=self.value("quad/max_depth", type=int),
            rule=self.value("quad/rule", type=str),
        )

    def apply_runtime(self):
        """Pushes process-wide knobs into the numeric core."""

        from turbo_lerch.core.lerch import set_series_cap

        set_series_cap(self.value("lerch/series_cap", type=int))


def builtin_type(default: Any) -> type:
    return float if isinstance(default, float) else type(default)


def _flatten(document: Mapping[str, Any], prefix: str = "") -> Dict[str, Any]:
    """Accepts both {"verify/rel_tol": x} and {"verify": {"rel_tol": x}}."""

    flat = {}
    for key, value in document.items():
        name = f"{prefix}/{key}" if prefix else str(key)
        if isinstance(value, Mapping):
            flat.update(_flatten(value, name))
        else:
            flat[name] = value
    return flat


def load_settings(path: Union[str, Path, None] = None, overrides: Optional[Mapping[str, Any]] = None) -> Settings:
    """
    Defaults, then the JSON file at `path` (or $TURBO_LERCH_SETTINGS), then
    `overrides`. None-valued overrides are ignored so unset CLI flags keep the
    file value.
    """
    settings = Settings()

    path = path or os.environ.get(ENV_VAR)
    if path:
        try:
            document = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise SettingsError(f"cannot read settings file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise SettingsError(f"settings file {path} line {exc.lineno}: {exc.msg}") from exc
        if not isinstance(document, Mapping):
            raise SettingsError(f"settings file {path} must hold a JSON object")
        settings.update(_flatten(document))
        logger.debug(f"Settings loaded from {path}")

    if overrides:
        settings.update(overrides)
    return settings
