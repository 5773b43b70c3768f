"""
Runtime configuration for cvstab, read from the environment at import time.
"""

from os import getenv, path

PWD = path.dirname(path.realpath(__file__))

# Environment variables
MAX_NODES = int(getenv("CVSTAB_MAX_NODES", 10_000_000))
TOLERANCE = float(getenv("CVSTAB_TOLERANCE", 1e-9))
SYNDROME_TOLERANCE = float(getenv("CVSTAB_SYNDROME_TOLERANCE", 1e-9))
SEED = int(getenv("CVSTAB_SEED", 0))
LOG_LEVEL = getenv("CVSTAB_LOG_LEVEL", "WARNING").upper()
CATALOG_PATH = getenv("CVSTAB_CATALOG", path.join(PWD, "codes.json"))

# 12 significant digits for simulated quantities
FLOAT_FORMAT = "%.12g"
