import sys

from coxalt.cli import main

sys.exit(main())
