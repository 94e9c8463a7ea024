"""HTTP inference service exposing a masked language model."""

from .config import ServerConfig
from .service import create_app

__all__ = ["ServerConfig", "create_app"]
__version__ = "0.1.0"
