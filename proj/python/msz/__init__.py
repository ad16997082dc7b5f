"""Order-free compression of multisets."""

from ._msz import (
    AnsState,
    CapacityError,
    ContractError,
    FormatError,
    IngestError,
    NotFoundError,
    compress_bytes,
    compress_ints,
    compress_json,
    decompress,
    dirichlet_source,
    fixed_unique_multiset,
    info,
    nested_savings_bound,
    rate_report_bytes,
    rate_report_ints,
)

__all__ = [
    "AnsState",
    "CapacityError",
    "ContractError",
    "FormatError",
    "IngestError",
    "NotFoundError",
    "compress_bytes",
    "compress_ints",
    "compress_json",
    "decompress",
    "dirichlet_source",
    "fixed_unique_multiset",
    "info",
    "nested_savings_bound",
    "rate_report_bytes",
    "rate_report_ints",
]
