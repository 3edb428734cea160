import sys

from slocc2mn.cli import main

sys.exit(main())
