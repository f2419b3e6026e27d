import logging


def setup_logging(level: str = "INFO", fmt=None):
    """Configure the root logger once; repeated calls only adjust the level."""
    logging.basicConfig(level=level, format=fmt)


def confirm(prompt: str) -> bool:
    """Ask prompt and return True for y/yes."""
    return input(prompt + " [y/N] ").strip().lower() in ("y", "yes")
