"""Randomised synthetic fundamental pairs with flags fixed by construction."""

import numpy as np

from ektau.arpair import FundamentalPair

US = np.linspace(-0.3, 0.3, 25)
VS = np.linspace(-0.2, 0.2, 17)


def rand_holo(rng):
    a = rng.normal(size=4) + 1j * rng.normal(size=4)
    return lambda z: a[0] + a[1] * z + a[2] * z * z + 0.3 * a[3] * np.exp(z)


def rand_lam(rng):
    b = rng.uniform(0.5, 2.0)
    c = rng.normal(size=2) * 0.5
    return lambda z: b * np.exp(c[0] * z.real + c[1] * z.imag)


def branch_pair(branch, rng):
    """Randomised exact pairs whose flags are fixed by construction."""
    if branch == "cmc_holomorphic":  # H const, Q holomorphic -> Codazzi (all three)
        c = rng.uniform(-2, 2)
        return FundamentalPair.synthetic(US, VS, rand_lam(rng), lambda z: c + 0 * z.real, rand_holo(rng)), (True, True, True)
    if branch == "codazzi_varying_H":  # lam const, H = a|z|^2 + b, Q = lam a zbar^2 / 2 + g(z)
        lam0, a, b = rng.uniform(0.5, 2), rng.uniform(0.5, 2), rng.uniform(-1, 1)
        g = rand_holo(rng)
        return FundamentalPair.synthetic(US, VS, lambda z: lam0 + 0 * z.real, lambda z: a * abs(z) ** 2 + b,
                                         lambda z: lam0 * a * np.conj(z) ** 2 / 2 + g(z)), (True, False, False)
    if branch == "cmc_nonholomorphic":  # H const, Q not holomorphic -> not Codazzi
        c, e = rng.uniform(-2, 2), rng.uniform(0.5, 2)
        g = rand_holo(rng)
        return FundamentalPair.synthetic(US, VS, rand_lam(rng), lambda z: c + 0 * z.real,
                                         lambda z: g(z) + e * np.conj(z)), (False, True, False)
    if branch == "holomorphic_varying_H":  # Q holomorphic, H varying -> not Codazzi
        a = rng.uniform(0.5, 2)
        return FundamentalPair.synthetic(US, VS, rand_lam(rng), lambda z: a * z.real, rand_holo(rng)), (False, False, True)
    raise ValueError(branch)


BRANCHES = ("cmc_holomorphic", "codazzi_varying_H", "cmc_nonholomorphic", "holomorphic_varying_H")
