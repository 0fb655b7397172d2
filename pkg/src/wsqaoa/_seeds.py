"""Deterministic seed derivation for sweep cells and restarts.

A counter-based mix (SplitMix64 finalizer) maps a master seed plus any
sequence of integer indices to an independent 64-bit stream seed, so every
sweep cell can be reproduced in isolation.
"""

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(x: int) -> int:
    """SplitMix64 finalizer; bijective on 64-bit integers."""
    x &= _MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK
    return (x ^ (x >> 31)) & _MASK


def derive_seed(master: int, *indices: int) -> int:
    """Fold integer indices into a master seed, one mix round per index."""
    h = mix64(master)
    for v in indices:
        h = mix64(h ^ mix64((v + _GOLDEN) & _MASK))
    return h
