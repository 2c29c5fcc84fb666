"""Allow running as python -m raonet."""

from .cli import main

if __name__ == "__main__":
    exit(main())
