# Standard library
import sys

# Local
try:
    from qubitradiometer.qubitradiometer import main
except ImportError:
    from . import main

if __name__ == "__main__":
    sys.exit(main())
