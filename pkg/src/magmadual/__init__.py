"""Binary operations on finite sets: classification, compatibility and duals."""

__version__ = "0.1.0"

from .classify import ClassificationRecord, classify_op, is_group, is_monoid
from .compat import CompatReport, DualSet, Method, are_compatible, check_op, dual_set, hat_op
from .duality import (
    Permutation,
    are_isomorphic,
    automorphisms,
    conjugate,
    count_group_structures,
    group_ops_with_identity,
    iso_classes,
    partition_group_ops,
    phi,
    phi_inverse,
)
from .enumerate import ClassFilter, count_ops, enumerate_ops
from .explorer import QuestionReport, scan_question
from .table import CayleyTable, LabelMap, OpCode, decode_op, encode_op, make_table, read_table, write_table

__all__ = [
    "CayleyTable", "ClassFilter", "ClassificationRecord", "CompatReport", "DualSet",
    "LabelMap", "Method", "OpCode", "Permutation", "QuestionReport",
    "are_compatible", "are_isomorphic", "automorphisms", "check_op", "classify_op",
    "conjugate", "count_group_structures", "count_ops", "decode_op", "dual_set",
    "encode_op", "enumerate_ops", "group_ops_with_identity", "hat_op", "is_group",
    "is_monoid", "iso_classes", "make_table", "partition_group_ops", "phi",
    "phi_inverse", "read_table", "scan_question", "write_table",
]
