"""Alpha: tiny HTTP helpers."""
from .client import Client
from .config import load_config

__all__ = ["Client", "load_config"]
