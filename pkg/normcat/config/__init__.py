import os

from dotenv import load_dotenv

load_dotenv()

profile = os.getenv("NORMCAT_PROFILE", "desk")

if profile == "thorough":
    from .config_thorough import (
        CROSS_CHECK,
        DEFAULT_SEED,
        GRP_ORDER,
        MAX_CARRIER,
        MAX_HOMSET,
        MAX_ORDER,
        SAMPLE_COUNT,
        SQUARE_COUNT,
    )
else:
    from .config_desk import (
        CROSS_CHECK,
        DEFAULT_SEED,
        GRP_ORDER,
        MAX_CARRIER,
        MAX_HOMSET,
        MAX_ORDER,
        SAMPLE_COUNT,
        SQUARE_COUNT,
    )

if os.getenv("NORMCAT_MAX_HOMSET"):
    MAX_HOMSET = int(os.environ["NORMCAT_MAX_HOMSET"])

if os.getenv("NORMCAT_CROSS_CHECK") == "0":
    CROSS_CHECK = False

__all__ = [
    "CROSS_CHECK",
    "DEFAULT_SEED",
    "GRP_ORDER",
    "MAX_CARRIER",
    "MAX_HOMSET",
    "MAX_ORDER",
    "SAMPLE_COUNT",
    "SQUARE_COUNT",
]
