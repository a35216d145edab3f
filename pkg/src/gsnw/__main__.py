import sys

from gsnw.cli import main

sys.exit(main())
