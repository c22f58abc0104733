MAX_HOMSET = 20_000
MAX_ORDER = 8
GRP_ORDER = 12
MAX_CARRIER = 4
SAMPLE_COUNT = 125
SQUARE_COUNT = 500
CROSS_CHECK = True
DEFAULT_SEED = 0
