# -*- coding: utf-8 -*-
"""henonlab Module.

Least-energy solutions of Henon type equations on balls, computed through
the doubly symmetric reduction, and the concentration diagnostics built on
top of them.
"""

__version__ = "0.3.0"
