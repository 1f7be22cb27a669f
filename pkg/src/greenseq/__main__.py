import sys

from greenseq.cli import main

sys.exit(main())
