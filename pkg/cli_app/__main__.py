# File name: cli_app/__main__.py

import sys

from cli_app.commands import main

sys.exit(main())
