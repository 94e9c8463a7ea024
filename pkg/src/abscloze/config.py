"""Run configuration with file, environment, and flag layering.

Precedence, lowest to highest: built-in defaults, a ``key = value`` config
file, ``ABSCLOZE_<KEY>`` environment variables, explicit command-line flags.
Unknown keys fail loudly rather than being ignored.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

ENV_PREFIX = "ABSCLOZE_"

STRATEGIES = ("plain", "voting", "max-context")
WEIGHTINGS = ("exact", "similarity")
METHODS = ("none", "difference", "threshold")
IMPROVERS = ("linguistic", "hyponym")


@dataclass
class Config:
    # scoring backends: remote service URLs (two or more form an ensemble),
    # or a document-per-line corpus file for the built-in scorer.
    backend_urls: tuple[str, ...] = ()
    toy_corpus: str = ""
    timeout_ms: int = 30000
    retries: int = 2
    # chunking
    max_len: int = 512
    stride: int = 128
    strategy: str = "plain"
    weighting: str = "exact"
    # decision improvement
    method: str = "none"
    improver: str = "linguistic"
    diff_threshold: float = 0.1
    prob_threshold: float = 0.5
    majority: int = 7
    hyponym_depth: int = 1
    # word embeddings
    large_value: float = 100.0
    default_embedding: str = "oriented"
    # augmentation
    n: int = 3
    mask_rate: float = 0.15
    seed: int = 0
    # attribution
    n_steps: int = 25
    # execution
    jobs: int = 1
    # lexical data
    wordnet_dir: str = ""
    senti_file: str = ""
    freq_file: str = ""

    def __post_init__(self):
        if self.strategy not in STRATEGIES:
            raise ValueError(f"strategy must be one of {STRATEGIES}")
        if self.weighting not in WEIGHTINGS:
            raise ValueError(f"weighting must be one of {WEIGHTINGS}")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")
        if self.improver not in IMPROVERS:
            raise ValueError(f"improver must be one of {IMPROVERS}")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    @property
    def strategy_name(self) -> str:
        """Full strategy id: voting is qualified by its weighting scheme."""
        if self.strategy == "voting":
            return f"voting-{self.weighting}"
        return self.strategy


_FIELDS = {f.name: f for f in dataclasses.fields(Config)}


def _coerce(name: str, value):
    field = _FIELDS[name]
    if not isinstance(value, str):
        return value
    if field.type in ("int", int):
        return int(value)
    if field.type in ("float", float):
        return float(value)
    if name == "backend_urls":
        return tuple(u.strip() for u in value.split(",") if u.strip())
    return value


def parse_config_file(path) -> dict:
    """Read ``key = value`` lines; '#' starts a comment, blanks are skipped."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{line_no}: expected 'key = value'")
            key, _, raw = line.partition("=")
            values[key.strip().replace("-", "_")] = raw.strip()
    return values


def env_overrides(environ=None) -> dict:
    environ = os.environ if environ is None else environ
    values = {}
    for key, value in environ.items():
        if key.startswith(ENV_PREFIX):
            values[key[len(ENV_PREFIX) :].lower()] = value
    return values


def load_config(
    config_file=None, environ=None, overrides: dict | None = None
) -> Config:
    """Layer file, environment, and explicit overrides over the defaults."""
    merged: dict = {}
    for layer in (
        parse_config_file(config_file) if config_file else {},
        env_overrides(environ),
        overrides or {},
    ):
        for key, value in layer.items():
            if key not in _FIELDS:
                raise ValueError(f"unknown config key {key!r}")
            merged[key] = _coerce(key, value)
    return Config(**merged)
