import sys

from gendiv.cli import main

sys.exit(main())
