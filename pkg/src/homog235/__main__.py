import sys

from homog235.cli import main

sys.exit(main())
