"""Search caps and reproducibility settings.

Values come from (lowest to highest precedence) the built-in defaults, an
optional ``key = value`` config file, the ``MINORFORGE_CAP`` environment
variable, and explicit keyword arguments.
"""
import configparser
import os
from dataclasses import dataclass, fields, replace

DEFAULT_CAP = 16
DEFAULT_LINKED_CAP = 9
DEFAULT_SEED = 0
DEFAULT_GIRTH_RETRIES = 10_000


@dataclass(frozen=True)
class Config:
    cap: int = DEFAULT_CAP
    linked_cap: int = DEFAULT_LINKED_CAP
    seed: int = DEFAULT_SEED
    girth_retries: int = DEFAULT_GIRTH_RETRIES
    deterministic: bool = True
    jobs: int = 1


_current = None


def load_config_file(path):
    """Parse a flat ``key = value`` file into a dict of typed overrides."""
    parser = configparser.ConfigParser()
    with open(path) as fh:
        parser.read_string("[minorforge]\n" + fh.read())
    types = {f.name: f.type for f in fields(Config)}
    out = {}
    for key, raw in parser["minorforge"].items():
        key = key.replace("-", "_")
        if key not in types:
            raise ValueError(f"unknown config key {key!r}")
        raw = raw.strip().strip('"')
        if types[key] in (bool, "bool"):
            out[key] = raw.lower() in ("1", "true", "yes", "on")
        else:
            out[key] = int(raw)
    return out


def get_config():
    global _current
    if _current is None:
        cfg = Config()
        env = os.environ.get("MINORFORGE_CAP")
        if env:
            cfg = replace(cfg, cap=int(env))
        _current = cfg
    return _current


def set_config(**overrides):
    """Replace global settings; returns the new config."""
    global _current
    _current = replace(get_config(), **overrides)
    return _current


def reset_config():
    global _current
    _current = None


def resolve_cap(cap):
    return get_config().cap if cap is None else cap
