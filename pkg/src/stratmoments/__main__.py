"""Allow running stratmoments as ``python -m stratmoments``."""

from stratmoments.cli import main

if __name__ == "__main__":
    raise SystemExit(main())
