import json
from pathlib import Path
from typing import Any, Dict

from src import logger_config
from src import config

logger = logger_config.get_logger(__name__)

# Relative paths in PERMSTATS_SETTINGS_FILE resolve against the repository root
_REPO_ROOT = Path(__file__).parent.parent
SETTINGS_FILE = Path(config.SETTINGS_FILE_PATH)
if not SETTINGS_FILE.is_absolute():
    SETTINGS_FILE = _REPO_ROOT / SETTINGS_FILE

# Default settings
DEFAULT_SETTINGS: Dict[str, Any] = {
    "default_format": "text",
    "max_n": {
        "prop3.1": 9,
        "thm3.2": 8,
        "prop3.3": 9,
        "thm3.4": 10,
        "prop3.5": 9,
        "table1": 8,
        "conj4.1": 8,
        "conj4.2": 8,
        "w2-sortable": 8,
        "sanity": 7,
    },
}

_current_settings: Dict[str, Any] = json.loads(json.dumps(DEFAULT_SETTINGS))


def load_settings() -> Dict[str, Any]:
    """Load settings from file, merging them over the defaults."""
    global _current_settings
    if SETTINGS_FILE.exists():
        try:
            with open(SETTINGS_FILE, "r") as f:
                saved = json.load(f)
            max_n = dict(DEFAULT_SETTINGS["max_n"])
            max_n.update(saved.get("max_n", {}))
            _current_settings.update(saved)
            _current_settings["max_n"] = max_n
        except Exception as e:
            logger.error(f"[SETTINGS] Failed to load settings: {e}")
    return _current_settings


def save_settings(new_settings: Dict[str, Any]) -> None:
    """Save settings to file."""
    global _current_settings

    _current_settings.update(new_settings)

    try:
        SETTINGS_FILE.parent.mkdir(parents=True, exist_ok=True)
        with open(SETTINGS_FILE, "w") as f:
            json.dump(_current_settings, f, indent=2)
        logger.info("[SETTINGS] Configuration saved successfully")
    except Exception as e:
        logger.error(f"[SETTINGS] Failed to save settings: {e}")
        raise


def get_setting(key: str, default: Any = None) -> Any:
    """Get a single setting value."""
    return load_settings().get(key, default)


def default_max_n(check_name: str) -> int:
    """Default upper bound on n for a verify check."""
    return int(get_setting("max_n", {}).get(check_name, DEFAULT_SETTINGS["max_n"][check_name]))


# Load on module import
load_settings()
