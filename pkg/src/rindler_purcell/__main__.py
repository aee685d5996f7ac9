"""Module entry point: ``python -m rindler_purcell``."""

from .cli import main

if __name__ == "__main__":
    raise SystemExit(main())
