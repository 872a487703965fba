"""Grid-pyramid augmentation toolkit.

Images are uint8 arrays of shape (H, W) or (H, W, C), masks are uint8 0/1
arrays of shape (H, W), probability and std maps are float64 arrays of shape (H, W).
"""

from ._pyra import *  # noqa: F401,F403
from ._pyra import __version__, DEFAULT_PYRAMID, IoError, ValidationError  # noqa: F401
