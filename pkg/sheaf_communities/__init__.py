"""
Community detection with bounded confidence dynamics on cellular sheaves.

Usage:
    from sheaf_communities.services import karate_club, detect_nonconstant
"""

from .utils.constants import PACKAGE_INFO

__version__ = PACKAGE_INFO["VERSION"]
__description__ = PACKAGE_INFO["DESCRIPTION"]
