"""Exhaustive search for primitive integer cuboids using Pythagorean groups."""
from .backend import kernel
from .condition_scan import RawCandidate, SearchCondition, scan_edge, test_square
from .cuboid_model import (Cuboid, CuboidType, RadicalLength, canonicalize, reduce_primitive, sorted_side,
                           verify)
from .errors import (CapacityError, CheckpointError, CuboidError, InconsistentCuboidError, MalformedRowError,
                     RowVerificationError)
from .pythagorean import DivisorSet, PyGroup, divisor_set, py_group
from .search import SearchConfig, SearchReport, print_py, search_range, verify_table
from .table_format import TableRow, format_row, parse_row, sort_rows

__version__ = "0.1.0"
BACKEND = kernel.NAME
