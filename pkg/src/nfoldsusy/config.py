"""Run-wide bounds, overridable through environment variables."""

import os

# Hard cap on derivative orders produced by the ring derivation.  The
# identities handled here never need more than a fifth derivative, so the
# default leaves generous headroom while still catching runaway recursion.
DEFAULT_MAX_DERIV = 12

# Default cap on derivative orders admitted inside searched monomial bases
# (integral-constant search, ideal membership).
DEFAULT_SEARCH_DERIV_BOUND = 12


def max_deriv_order() -> int:
    return int(os.environ.get("NFOLDSUSY_MAX_DERIV", DEFAULT_MAX_DERIV))


def search_deriv_bound() -> int:
    return int(os.environ.get("NFOLDSUSY_DERIV_BOUND", DEFAULT_SEARCH_DERIV_BOUND))
