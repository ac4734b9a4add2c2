from fractions import Fraction

# General
CLAIMS_FILE = "claims.yaml"
REFERENCES_FILE = "references.yaml"
FOUR_CUSP_CASES_FILE = "four_cusp_cases.yaml"
DATA_FILE_EXT = (".yaml", ".yml", ".json")  # Graph and config files
SEPARATOR = "/"  # Claim paths, as in "five-cusps/search"

# Graph JSON
MARK_MINUS_ONE = "minus_one"
MARK_CURVE = "curve"
HEAD_ID = -1  # Smooth curve through the first blown-up points (star segments)
CURVE_ID = 0  # Proper transform E inside an assembled divisor D

# Enumeration caps
K_MAX = 50
MAX_COMPONENTS = 14
SWEEP_BOUND = 500
MIN_DEGREE = 6
PROPERTY_CASES = 200
SEED = 20100622

# Environment
ENV_MAX_K = "TWIGCALC_MAX_K"

# Five cusps, ten maximal twigs
CUSPS = 5
DELTA_D_MIN = Fraction(7, 2)
E_D_MAX = Fraction(4)
U_BOUND = Fraction(1, 2)
DELTA_BAR_MAX = Fraction(1, 2) + Fraction(1, 3)  # [2,1,3]
E_BAR_MAX_SINGLE = Fraction(2, 3)

# Four cusps, ten maximal twigs
TWIG_OPTION_TARGET = Fraction(2, 3)
NOETHER_OFFSET = 8

# Surface constants (plane cuspidal configurations)
EULER_CHARACTERISTIC = 1  # chi(X - D), Q-acyclic complement
BMY_FACTOR = 3
NOETHER_TOTAL = 10
GAMMA_MIN = 4
TWIG_BOUND = 9
TWIG_DERIVATION_CUSPS = 8  # Cusp counts covered by the twig count derivation
PLUMBING = "plumbing"  # Anchor of checks with no source statement

# Statuses
PASS = "pass"
FAIL = "fail"
ASSUMED = "assumed"
UNKNOWN = "unknown"
RECTIFIABLE = "rectifiable"
INCONCLUSIVE = "inconclusive"
