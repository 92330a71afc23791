"""Bounds for the Lipschitz constant of the systole map on a surface family.

Core objects: surfaces and rational rays of covers, twist-chain transition
matrices, certified Perron-root enclosures, mixing numbers, and the assembled
upper/lower bound tables.  A FastAPI service (syslip.service) wraps the
library; the command line client (syslip.cli) talks to it.
"""

__version__ = "0.1.0"

from .surfaces import RationalRay, RayPoint, Surface  # noqa: F401
