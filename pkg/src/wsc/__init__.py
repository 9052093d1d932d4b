"""Exact characters of finite W-superalgebra modules for gl(m|n) and osp(2|2n)."""
from .errors import WscError
from .superalgebra import build_root_datum, parse_algebra, realize
from .nilpotent import build_nilpotent, parse_partition_pair

__version__ = "0.1.0"

__all__ = ["WscError", "build_root_datum", "parse_algebra", "realize", "build_nilpotent",
           "parse_partition_pair", "__version__"]
