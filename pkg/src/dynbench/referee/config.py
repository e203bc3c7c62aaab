"""Referee configuration: defaults < config file < environment < explicit args.

The config file is JSON; the environment variables mirror its keys with a
DYNBENCH_ prefix (DYNBENCH_ADDR, DYNBENCH_PACKS_DIR, DYNBENCH_STATE_DIR,
DYNBENCH_QUOTA, DYNBENCH_PAYLOAD_CAP, DYNBENCH_ADMIN_TOKEN).  A quota of 0
means unlimited submissions.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path

DEFAULT_PAYLOAD_CAP = 256 * 1024 * 1024   # bytes
DEFAULT_QUOTA = 5                         # submissions per team per UTC day


@dataclass(frozen=True)
class RefereeConfig:
    packs_dir: str
    state_dir: str
    addr: str = "127.0.0.1:8787"
    quota: int = DEFAULT_QUOTA
    payload_cap: int = DEFAULT_PAYLOAD_CAP
    admin_token: str | None = None

    @property
    def host(self) -> str:
        return self.addr.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        return int(self.addr.rsplit(":", 1)[1])


_ENV_KEYS = {
    "addr": "DYNBENCH_ADDR",
    "packs_dir": "DYNBENCH_PACKS_DIR",
    "state_dir": "DYNBENCH_STATE_DIR",
    "quota": "DYNBENCH_QUOTA",
    "payload_cap": "DYNBENCH_PAYLOAD_CAP",
    "admin_token": "DYNBENCH_ADMIN_TOKEN",
}
_INT_KEYS = {"quota", "payload_cap"}


def load_config(
    config_file: str | Path | None = None,
    env: dict | None = None,
    **overrides,
) -> RefereeConfig:
    """Merge configuration sources; explicit keyword overrides win."""
    env = os.environ if env is None else env
    values: dict = {}
    if config_file:
        values.update(json.loads(Path(config_file).read_text()))
    for key, env_key in _ENV_KEYS.items():
        if env_key in env:
            values[key] = env[env_key]
    for key, value in overrides.items():
        if value is not None:
            values[key] = value
    for key in _INT_KEYS:
        if key in values:
            values[key] = int(values[key])
    unknown = set(values) - set(_ENV_KEYS)
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    if "packs_dir" not in values or "state_dir" not in values:
        raise ValueError("packs_dir and state_dir are required")
    return RefereeConfig(**values)
