"""Token-domain video link simulator.

Thin Python surface over the C++ core: progressive block tokenization,
differential top-K packing, ACM/PHY simulation and the end-to-end runner.
"""

from toklink._core import (  # noqa: F401
    ZERO_FLAG_TOKEN,
    TokenizerConfig,
    tokenize,
    detokenize,
    zero_state,
    change_mask,
    frame_cost,
    pack,
    unpack,
    allocate_symbols,
    deliverable_bits,
    max_feasible_k,
    plan_gop,
    standard_acm_table,
    select_mcs,
    modulate,
    awgn,
    demodulate,
    key_indices,
    neighbors,
    interpolate,
    cbr,
    psnr,
    run_simulation,
)

__all__ = [
    "ZERO_FLAG_TOKEN",
    "TokenizerConfig",
    "tokenize",
    "detokenize",
    "zero_state",
    "change_mask",
    "frame_cost",
    "pack",
    "unpack",
    "allocate_symbols",
    "deliverable_bits",
    "max_feasible_k",
    "plan_gop",
    "standard_acm_table",
    "select_mcs",
    "modulate",
    "awgn",
    "demodulate",
    "key_indices",
    "neighbors",
    "interpolate",
    "cbr",
    "psnr",
    "run_simulation",
]
