import os
from dotenv import load_dotenv


load_dotenv()


class Config:
    ################################################################
    # Runtime part

    WORKERS = {
        # Raw value of GRIDSLICE_THREADS; validated by `app.util.worker_count`.
        "threads": os.getenv("GRIDSLICE_THREADS"),
        # Used when the variable is absent or malformed.
        "default_threads": 1,
    }

    LOGGING = {
        "level": os.getenv("GRIDSLICE_LOG_LEVEL") or "WARNING",
    }

    ################################################################
    # Computation part

    HOMOLOGY = {
        # Default bidegree window for `homology` when no bounds are given.
        "window": {"a_min": -4, "a_max": 2, "mu_min": -9, "mu_max": 1},
    }

    CHECK = {
        "seed": 0,
        "count": 20,
        # `check --exhaustive N` refuses larger N: 5 already means 14400 diagrams.
        "max_exhaustive_n": 4,
        # How many failing witnesses to keep per property.
        "witness_limit": 1,
    }

    BENCH = {
        "n": 5,
        "seed": 0,
        "repeat": 1,
    }

    GRID_FILE = {
        "header": "grid v1",
        "encoding": "utf-8",
    }
