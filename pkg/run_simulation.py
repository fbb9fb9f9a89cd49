#!/usr/bin/env python3
"""
run_simulation.py – root entry script.

    python run_simulation.py simulate --protocol iskmeans --seed 1
    python run_simulation.py batch -c config/ISKM_default.yaml --k 4 --seeds 1-20
    python run_simulation.py cluster --layout layout.csv --k 4
    python run_simulation.py validate-config -c config/scenario2.yaml
"""

import sys

from metrics_io.cli import main

if __name__ == "__main__":
    sys.exit(main())
