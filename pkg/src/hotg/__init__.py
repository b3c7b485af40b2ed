"""A small proof checker for higher-order Tarski-Grothendieck set theory."""

import sys

# proof terms and unfolded propositions nest deeply
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

__version__ = "0.1.0"
