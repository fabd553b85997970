import sys

from turbo_lerch.cli.app import main

if __name__ == "__main__":
    sys.exit(main())
