"""Square Tanner codes on two-sided Cayley complexes.

Subpackages are imported explicitly (``from sqcodes import ltc``); nothing
heavy runs at import time.
"""

__version__ = "0.1.0"
