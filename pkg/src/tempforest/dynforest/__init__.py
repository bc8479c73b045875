"""0/1-weighted rooted dynamic forest (link-cut tree backing)."""
from .forest import DynamicForest, ForestUsageError

__all__ = ["DynamicForest", "ForestUsageError"]
