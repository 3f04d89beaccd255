#!/usr/bin/env python3
"""
Handlers package for sheaf community detection.

Contains one handler class per family of command-line commands.
"""

from .base_handler import BaseHandler
from .detection_handlers import DetectionHandlers
from .experiment_handlers import ExperimentHandlers
from .sheaf_handlers import SheafHandlers

__all__ = [
    "BaseHandler",
    "DetectionHandlers",
    "ExperimentHandlers",
    "SheafHandlers",
]
