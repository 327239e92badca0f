# Core Services and Shared Utilities for the Complex Circle Manifold Toolkit

import os
import sys
import json
import logging
import threading
from datetime import datetime
from typing import Dict, Any

from config import ENVIRONMENT, DEBUG_ENABLED, LOG_LEVEL

# LOCAL DEVELOPMENT: pick up CCM_* switches from a .env file
if ENVIRONMENT == "development":
    try:
        from dotenv import load_dotenv
        load_dotenv()
    except Exception as e:
        print(f"[LOCAL] Failed to load .env file: {e}", file=sys.stderr)


def resolve_log_level() -> int:
    """CCM_LOG_LEVEL as seen after the .env load; unknown names fall back to DEBUG"""
    name = os.getenv("CCM_LOG_LEVEL", LOG_LEVEL)
    level = logging.getLevelName(name.upper())
    return level if isinstance(level, int) else logging.DEBUG


logger = logging.getLogger("ccm")
if not logger.handlers:
    _handler = logging.StreamHandler(sys.stderr)
    _handler.setFormatter(logging.Formatter("%(message)s"))
    logger.addHandler(_handler)
logger.setLevel(resolve_log_level())
logger.propagate = False


# Global state management
class GlobalState:
    def __init__(self):
        self.debug_mode = DEBUG_ENABLED or os.getenv("CCM_DEBUG", "").lower() in ("1", "true", "yes")
        self.startup_time = datetime.utcnow()
        self.function_calls: Dict[str, int] = {}
        self._lock = threading.Lock()

    def track_function_call(self, function_name: str):
        with self._lock:
            self.function_calls[function_name] = self.function_calls.get(function_name, 0) + 1

    def get_status(self) -> Dict[str, Any]:
        with self._lock:
            uptime = datetime.utcnow() - self.startup_time
            return {
                "uptime_seconds": uptime.total_seconds(),
                "function_calls": self.function_calls.copy(),
                "debug_mode": self.debug_mode,
            }


global_state = GlobalState()


def log_debug(message: str, data: Any = None) -> Dict[str, Any]:
    """Structured logging: one JSON line per entry when debug mode is on"""
    timestamp = datetime.utcnow().isoformat()
    log_entry = {
        "timestamp": timestamp,
        "message": message,
        "data": data
    }

    if global_state.debug_mode:
        logger.debug(json.dumps(log_entry, default=str))

    return log_entry


def track_function_entry(function_name: str):
    """Track command entry for monitoring"""
    global_state.track_function_call(function_name)
    log_debug(f"Function called: {function_name}")


def toggle_debug_mode(enabled: bool = None) -> bool:
    """Toggle or set debug mode"""
    if enabled is not None:
        global_state.debug_mode = enabled
    else:
        global_state.debug_mode = not global_state.debug_mode

    log_debug(f"Debug mode {'enabled' if global_state.debug_mode else 'disabled'}")
    return global_state.debug_mode
