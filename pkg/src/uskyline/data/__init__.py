"""Small bundled edge lists used by the examples and tests."""

from pathlib import Path

DATA_DIR = Path(__file__).resolve().parent


def path(name):
    return DATA_DIR / name
