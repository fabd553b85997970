from turbo_lerch.config.settings import DEFAULTS, ENV_VAR, Settings, SettingsError, load_settings

__all__ = ["DEFAULTS", "ENV_VAR", "Settings", "SettingsError", "load_settings"]
