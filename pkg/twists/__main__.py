import sys

from twists.cli import main

sys.exit(main())
