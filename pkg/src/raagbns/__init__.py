"""Toolkit for BNS-complement arrangements and outer pure symmetric
automorphism groups of right-angled Artin groups."""

__version__ = "0.1.0"
