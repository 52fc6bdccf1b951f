"""Polycyclic-group cryptography workbench."""

from _pcw import *  # noqa: F401,F403
from _pcw import __version__  # noqa: F401
