"""
Mean Field
The psi0 row determined by psi0[n] + psi0[n+1] = p2 a[n]
"""
from typing import Any

import numpy as np


def bond_density(phi: np.ndarray) -> np.ndarray:
    """a[n] = conj(phi[n]) phi[n+1] + phi[n] conj(phi[n+1]), zero past the right edge"""
    phi = np.asarray(phi, dtype=complex)
    ahead = np.append(phi[1:], 0)
    return 2 * np.real(np.conj(phi) * ahead)


def mean_field(phi: np.ndarray, p2: Any) -> np.ndarray:
    """
    Decaying solution of the psi0 relation.

    Accumulates right to left from psi0 = 0 past the right edge, so
    psi0[n] = p2 sum over j >= n of (-1)^(j-n) a[j].
    """
    source = complex(p2) * bond_density(phi)
    signs = np.where(np.arange(source.size) % 2 == 0, 1.0, -1.0)
    tail = np.cumsum((signs * source)[::-1])[::-1]
    return signs * tail
