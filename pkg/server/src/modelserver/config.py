"""Server configuration."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ServerConfig:
    """Model shape, sequence budget, and bind address.

    ``seed`` pins the weight initialization, which *is* the model identity:
    two servers with the same config serve bit-identical scores.
    """

    model_name: str = "tiny-mlm"
    seed: int = 1302
    max_len: int = 512
    d_model: int = 32
    n_layers: int = 2
    n_heads: int = 4
    ff_dim: int = 64
    host: str = "127.0.0.1"
    port: int = 8301

    def __post_init__(self):
        if self.max_len < 8:
            raise ValueError("max_len must be at least 8")
        if self.d_model % self.n_heads:
            raise ValueError("d_model must be divisible by n_heads")
