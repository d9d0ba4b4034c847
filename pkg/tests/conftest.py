"""Shared brute-force oracles, independent of the library's closed forms."""

import math

import numpy as np
import pytest


def series_coherent_overlap(alpha: complex, beta: complex, terms: int = 400) -> complex:
    """<alpha|beta> by direct term-by-term summation of the Fock series."""
    total = 0.0j
    log_term = -(abs(alpha) ** 2 + abs(beta) ** 2) / 2.0
    prefactor = math.exp(log_term)
    term = 1.0 + 0.0j
    for n in range(terms):
        total += term
        term = term * np.conj(alpha) * beta / (n + 1)
    return prefactor * total


def sectioned_sum_direct(x: float, modulus: int, residue: int, terms: int = 2000) -> float:
    """sum of x^n/n! over n = residue (mod modulus), summed term by term."""
    total = 0.0
    log_term = 0.0
    for n in range(terms):
        if n > 0:
            log_term += math.log(x) - math.log(n) if x > 0 else -math.inf
        if n % modulus == residue % modulus:
            total += math.exp(log_term)
    return total


def central_difference(f, x: float, h: float = 1e-5) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)
