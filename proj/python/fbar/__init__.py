"""Python bindings for the fbar pair-address codec."""

from ._fbar import (
    FormatError,
    ModeMismatch,
    TranslationTable,
    VerificationError,
    address_of_pair,
    canonical_factor,
    compress,
    decode_byte,
    decompress,
    empirical_entropy,
    fbar_H,
    manipulation_distance,
    pair_of_row,
    paper_size,
    pigeonhole_audit,
    row_of_address,
    savings_from_H,
)

__all__ = [
    "FormatError",
    "ModeMismatch",
    "TranslationTable",
    "VerificationError",
    "address_of_pair",
    "canonical_factor",
    "compress",
    "decode_byte",
    "decompress",
    "empirical_entropy",
    "fbar_H",
    "manipulation_distance",
    "pair_of_row",
    "paper_size",
    "pigeonhole_audit",
    "row_of_address",
    "savings_from_H",
]
