"""Entry point for ``python -m boltscan``."""
from boltscan.app.cli import main

if __name__ == "__main__":
    main()
