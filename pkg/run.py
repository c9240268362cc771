import sys

from qmap import main


if __name__ == "__main__":
    sys.exit(main())
