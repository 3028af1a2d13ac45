import sys

from triresource.cli import main

sys.exit(main())
