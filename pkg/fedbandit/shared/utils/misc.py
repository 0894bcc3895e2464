"""Hashing and seed derivation.

Every hash in fedbandit is 64-bit FNV-1a over UTF-8 bytes, optionally
seeded by folding the seed's eight little-endian bytes into the offset
basis first. The function is fixed here so ingestion labels and run
seeds are identical on every platform and Python version (``hash()`` is
salted per process and cannot be used).
"""

FNV64_OFFSET = 0xCBF29CE484222325
FNV64_PRIME = 0x100000001B3
MASK64 = 0xFFFFFFFFFFFFFFFF


def fnv1a_64(data, seed=0):
    """Seeded 64-bit FNV-1a of ``data`` (``str`` or ``bytes``)."""
    if isinstance(data, str):
        data = data.encode("utf8")
    h = FNV64_OFFSET
    for byte in int(seed & MASK64).to_bytes(8, "little") if seed else b"":
        h = ((h ^ byte) * FNV64_PRIME) & MASK64
    for byte in data:
        h = ((h ^ byte) * FNV64_PRIME) & MASK64
    return h


def _mix64(z):
    # splitmix64 finalizer; spreads FNV's weak low-bit avalanche
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & MASK64
    return z ^ (z >> 31)


def derive_seed(base_seed, *keys):
    """Derives an independent 64-bit seed from ``base_seed`` and a path of
    keys, e.g. ``derive_seed(seed, "cell", 3, "rep", 0)``.

    Adding new keys never changes the seeds derived for existing ones.
    """
    path = "/".join(str(k) for k in keys)
    return _mix64(fnv1a_64(path, seed=int(base_seed) & MASK64 or FNV64_PRIME))
