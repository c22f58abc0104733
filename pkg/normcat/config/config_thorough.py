MAX_HOMSET = 200_000
MAX_ORDER = 12
GRP_ORDER = 12
MAX_CARRIER = 4
SAMPLE_COUNT = 500
SQUARE_COUNT = 1000
CROSS_CHECK = True
DEFAULT_SEED = 0
