import sys

from vesselforge.cli import main

sys.exit(main())
