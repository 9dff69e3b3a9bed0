import sys

from dgquot.cli import main

sys.exit(main())
