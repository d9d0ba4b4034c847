"""Correctability analysis: orthogonality and non-deformation of corrupted
codewords, syndrome projection, and the state-dependent / worst-case fidelity.

The error model is the photon-annihilation ladder E_i = a^i.  A code is
exactly correctable for a pair (E_i, E_j) when corrupted codewords stay
orthogonal across logical indices and their norms do not depend on the
logical index; for these codes both conditions hold only approximately at
finite amplitude, and the reports below quantify the violations.

The computational basis (non-orthogonal codewords, "Z") is deformation-free
for every loss count; the orthogonal plus/minus basis ("X", qubits only)
keeps orthogonality but deforms under odd-cycle losses.  That trade is why
the channel analysis is carried out in the Z basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import fock
from .codes import CodeSpec, CodewordId, LogicalCoeffs, codeword_fock
from .channel import ChannelParams, MixtureComponent, mixture_weights


@dataclass(frozen=True)
class KLReport:
    """Gram matrix of corrupted codewords for one error pair.

    gram[k, l] = <c_k| E_i^dagger E_j |c_l> over normalized codewords;
    ortho_violation is the largest off-diagonal magnitude and
    deform_violation the largest relative spread among the diagonals.
    """

    error_pair: tuple[int, int]
    gram: np.ndarray
    ortho_violation: float
    deform_violation: float


@dataclass(frozen=True)
class FidelityResult:
    """Worst-case bound over balanced qubit inputs.

    F_of_ab is the correctable weight for the (1, 1)/sqrt(2) input; F_bound
    the minimum over both balanced sign choices, attained by
    minimizing_coeffs.
    """

    F_of_ab: float
    minimizing_coeffs: LogicalCoeffs
    F_bound: float


def _code_basis(spec: CodeSpec, basis: str, n_max: int | None):
    words = [codeword_fock(spec, CodewordId(k, 0), n_max=n_max) for k in range(spec.d)]
    if basis == "Z":
        return words
    if basis == "X":
        if spec.d != 2:
            raise ValueError("X basis is defined for qubit codes only")
        return [
            (words[0] + words[1]).normalized(),
            (words[0] - words[1]).normalized(),
        ]
    raise ValueError(f"basis must be 'Z' or 'X', got {basis!r}")


def kl_check(
    spec: CodeSpec,
    basis: str,
    error_i: int,
    error_j: int,
    n_max: int | None = None,
) -> KLReport:
    """Evaluate both correctability conditions for the pair (a^i, a^j)."""
    if error_i < 0 or error_j < 0:
        raise ValueError("loss counts must be nonnegative")
    words = _code_basis(spec, basis, n_max)
    corrupted_i = [fock.annihilate(w, error_i) for w in words]
    corrupted_j = (
        corrupted_i
        if error_j == error_i
        else [fock.annihilate(w, error_j) for w in words]
    )
    d = len(words)
    gram = np.empty((d, d), dtype=complex)
    for k in range(d):
        for l in range(d):
            gram[k, l] = fock.inner(corrupted_i[k], corrupted_j[l])
    off = abs(gram - np.diag(np.diag(gram)))
    diag = gram.diagonal().real
    scale = float(np.max(np.abs(diag)))
    spread = float(diag.max() - diag.min()) / scale if scale > 0 else 0.0
    return KLReport(
        error_pair=(error_i, error_j),
        gram=gram,
        ortho_violation=float(off.max()),
        deform_violation=spread,
    )


def parity_project(
    mixture: list[MixtureComponent],
    q: int,
) -> tuple[fock.DensityMatrix | None, float]:
    """Condition the output mixture on syndrome q.

    Returns the normalized post-measurement density matrix together with the
    syndrome probability; a zero-probability syndrome is flagged by a None
    matrix instead of dividing by zero.
    """
    selected = [c for c in mixture if c.space_q == q]
    if not selected:
        raise ValueError(f"no mixture component carries syndrome q={q}")
    prob = float(sum(c.weight for c in selected))
    if prob <= 0.0:
        return None, 0.0
    rho = fock.mix([(c.weight / prob, c.state) for c in selected])
    return rho, prob


def fidelity_state(
    spec: CodeSpec,
    coeffs: LogicalCoeffs,
    params: ChannelParams,
) -> float:
    """Input-dependent fidelity: total weight of the L+1 correctable branches
    (those reached without a cycle phase error)."""
    weights = mixture_weights(spec, coeffs, params)
    return float(np.sum(weights.ptilde[: spec.spaces]))


def fidelity_bound(spec: CodeSpec, params: ChannelParams) -> FidelityResult:
    """Lower bound on the worst-case fidelity for qubit codes.

    Restricted to real logical coefficients the state-dependent fidelity is
    extremal at the balanced inputs, so the bound is the minimum over the
    two sign choices (1, +-1)/sqrt(2).
    """
    if spec.d != 2:
        raise ValueError("the worst-case bound is defined for qubit codes only")
    plus = LogicalCoeffs.balanced(sign=1)
    minus = LogicalCoeffs.balanced(sign=-1)
    f_plus = fidelity_state(spec, plus, params)
    f_minus = fidelity_state(spec, minus, params)
    if f_minus < f_plus:
        return FidelityResult(F_of_ab=f_plus, minimizing_coeffs=minus, F_bound=f_minus)
    return FidelityResult(F_of_ab=f_plus, minimizing_coeffs=plus, F_bound=f_plus)


def fidelity_scan(
    spec: CodeSpec,
    params: ChannelParams,
    n_amplitudes: int = 32,
    n_phases: int = 16,
) -> tuple[float, LogicalCoeffs]:
    """Diagnostic grid minimization over complex qubit inputs.

    Scans (a, b) = (a, sqrt(1-a^2) e^{i phi}) over an amplitude/phase grid
    and returns the smallest state-dependent fidelity found with its input.
    The reported bound stays ``fidelity_bound`` (real coefficients); this
    scan only probes how much the real restriction gives away.
    """
    if spec.d != 2:
        raise ValueError("the diagnostic scan is defined for qubit codes only")
    best = np.inf
    best_coeffs = LogicalCoeffs.balanced()
    for a in np.linspace(0.0, 1.0, n_amplitudes):
        b_mag = np.sqrt(max(0.0, 1.0 - a * a))
        for phi in np.linspace(0.0, 2.0 * np.pi, n_phases, endpoint=False):
            coeffs = LogicalCoeffs((complex(a), b_mag * np.exp(1j * phi)))
            f = fidelity_state(spec, coeffs, params)
            if f < best:
                best, best_coeffs = f, coeffs
    return best, best_coeffs
