import sys

from pdacache.cli import main

sys.exit(main())
