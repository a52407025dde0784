"""Allows `python -m campana_count.cli`."""

from . import main

main()
