"""Head-term kernels for digit extraction.

A head term is ``frac(a * 2^e / d)``.  With ``a`` already reduced mod ``d``
its value is ``r / d`` where ``r = a * 2^e mod d``, and each kernel returns

    sum_i floor(r_i * 2^W / d_i)

exactly, as a Python int.  The numba and numpy kernels work in int64 and
accept moduli below 2^31 (so ``r << 32`` and ``r * r`` fit); the caller routes
larger moduli to the pure-Python path.

``BINBBP_KERNEL`` selects ``numba``, ``numpy`` or ``python``; the default is
numba when it imports, else numpy.
"""

from __future__ import annotations

import os
from typing import Callable, Sequence

import numpy as np

__all__ = ["KERNEL_LIMIT", "available_kernels", "get_kernel", "head_sum_python", "modpow2"]

KERNEL_LIMIT = 1 << 31
LIMB = 32

HeadSum = Callable[[Sequence[int], Sequence[int], Sequence[int], int], int]


def modpow2(e: int, modulus: int) -> int:
    """``2**e mod modulus`` by left-to-right binary exponentiation."""
    if e < 0 or modulus < 1:
        raise ValueError("need e >= 0 and modulus >= 1")
    if modulus == 1:
        return 0
    result = 1
    for bit in bin(e)[2:]:
        result = result * result % modulus
        if bit == "1":
            result = (result << 1) % modulus
    return result


def head_sum_python(a_mod: Sequence[int], e: Sequence[int], d: Sequence[int], w: int) -> int:
    total = 0
    for a, k, m in zip(a_mod, e, d):
        r = a * modpow2(k, m) % m
        total += (r << w) // m
    return total


def _combine_limbs(sums: np.ndarray) -> int:
    """``sum_i sums[i] * 2^(32 (L-1-i))``."""
    total = 0
    for s in sums.tolist():
        total = (total << LIMB) + int(s)
    return total


def _limbs(w: int) -> int:
    if w % LIMB:
        raise ValueError("array kernels need a multiple of 32 fractional bits")
    return w // LIMB


# -- numpy -------------------------------------------------------------------------


def head_sum_numpy(a_mod: Sequence[int], e: Sequence[int], d: Sequence[int], w: int) -> int:
    if not len(d):
        return 0
    av = np.asarray(a_mod, dtype=np.int64)
    ev = np.asarray(e, dtype=np.int64)
    dv = np.asarray(d, dtype=np.int64)
    r = np.ones_like(dv) % dv
    top = int(ev.max()).bit_length()
    for b in range(top - 1, -1, -1):
        r = r * r % dv
        bit = ((ev >> b) & 1).astype(bool)
        r = np.where(bit, (r << 1) % dv, r)
    r = av * r % dv
    nl = _limbs(w)
    sums = np.zeros(nl, dtype=np.int64)
    # long division: 32 quotient bits per step; limb sums stay below n * 2^32
    for i in range(nl):
        r = r << LIMB
        q = r // dv
        r = r - q * dv
        sums[i] = int(q.sum())
    return _combine_limbs(sums)


# -- numba -------------------------------------------------------------------------

try:
    from numba import njit

    @njit(cache=True)
    def _powmod2_nb(e, m):
        if m == 1:
            return 0
        result = 1
        top = 0
        x = e
        while x > 0:
            top += 1
            x >>= 1
        for b in range(top - 1, -1, -1):
            result = result * result % m
            if (e >> b) & 1:
                result = (result << 1) % m
        return result

    @njit(cache=True)
    def _limb_sums_nb(a_mod, e, d, nl):
        sums = np.zeros(nl, dtype=np.int64)
        for i in range(d.shape[0]):
            m = d[i]
            r = a_mod[i] * _powmod2_nb(e[i], m) % m
            for k in range(nl):
                r = r << 32
                q = r // m
                r = r - q * m
                sums[k] += q
        return sums

    def head_sum_numba(a_mod: Sequence[int], e: Sequence[int], d: Sequence[int], w: int) -> int:
        if not len(d):
            return 0
        sums = _limb_sums_nb(
            np.asarray(a_mod, dtype=np.int64),
            np.asarray(e, dtype=np.int64),
            np.asarray(d, dtype=np.int64),
            _limbs(w),
        )
        return _combine_limbs(sums)

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def available_kernels() -> list[str]:
    return (["numba"] if HAVE_NUMBA else []) + ["numpy", "python"]


def get_kernel(name: str | None = None) -> tuple[str, HeadSum]:
    """Resolve a kernel by name, falling back to ``BINBBP_KERNEL`` and then the default."""
    name = name or os.environ.get("BINBBP_KERNEL") or ("numba" if HAVE_NUMBA else "numpy")
    if name == "numba" and HAVE_NUMBA:
        return name, head_sum_numba
    if name == "numpy":
        return name, head_sum_numpy
    if name == "python":
        return name, head_sum_python
    raise ValueError(f"unknown or unavailable kernel {name!r}; choose from {available_kernels()}")
