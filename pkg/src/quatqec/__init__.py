"""Quaternion-coded quantum error correction simulation toolkit."""

from .quat import Q8, Q8Element, Quaternion, hamilton, q8_inv, q8_mul, q8_to_unitary
from .pauli import PauliString, StabilizerCode, builtin_shor, builtin_steane, load_code, parse_pauli
from .decode import (
    ResidualClass,
    build_lookup,
    decode_lookup,
    decode_search,
    encode_state,
    residual_class,
    syndrome,
    verify_distance,
)

__version__ = "0.1.0"
