import sys

from sulsim.cli import main

sys.exit(main())
