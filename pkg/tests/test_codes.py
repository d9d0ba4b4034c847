"""Codeword construction, overlaps, and the code-defining equations."""

import math

import numpy as np
import pytest

from catloss import fock
from catloss.codes import (
    CodeSpec,
    CodewordId,
    LogicalCoeffs,
    codeword_coherent,
    codeword_fock,
    codeword_overlap,
    verify_code_equations,
)


class TestSpecValidation:
    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            CodeSpec(-1, 2, 2.0)
        with pytest.raises(ValueError):
            CodeSpec(1, 1, 2.0)
        with pytest.raises(ValueError):
            CodeSpec(1, 2, 0.0)

    def test_small_alpha_flagged(self):
        with pytest.warns(UserWarning, match="collinear"):
            CodeSpec(1, 2, 0.05)

    def test_id_range_checked(self):
        spec = CodeSpec(1, 2, 2.0)
        with pytest.raises(ValueError):
            codeword_fock(spec, CodewordId(2, 0))
        with pytest.raises(ValueError):
            codeword_fock(spec, CodewordId(0, 2))


class TestFockSeries:
    def test_one_loss_code_space_series(self):
        # even series alpha^(2n)/sqrt((2n)!) normalized by sqrt(cosh(alpha^2))
        alpha = 2.0
        word = codeword_fock(CodeSpec(1, 2, alpha), CodewordId(0, 0), n_max=64)
        norm = math.sqrt(math.cosh(alpha**2))
        for n in range(0, 30, 2):
            expected = alpha**n / math.sqrt(math.factorial(n)) / norm
            assert abs(word.coeffs[n] - expected) < 1e-12
        assert np.all(word.coeffs[1::2] == 0.0)

    def test_two_loss_alternating_series(self):
        # support on multiples of three with coefficients (-alpha)^(3k)
        alpha = 3.0
        word = codeword_fock(CodeSpec(2, 2, alpha), CodewordId(1, 0), n_max=80)
        raw = np.zeros(81)
        for k in range(27):
            raw[3 * k] = (-alpha) ** (3 * k) / math.sqrt(float(math.factorial(3 * k)))
        raw /= np.linalg.norm(raw)
        assert np.max(np.abs(word.coeffs - raw)) < 1e-10

    def test_support_classes_exact(self):
        spec = CodeSpec(3, 2, 2.5)
        for q in range(4):
            word = codeword_fock(spec, CodewordId(1, q))
            n = np.arange(word.n_max + 1)
            off_class = (n % 4) != ((-q) % 4)
            assert np.all(word.coeffs[off_class] == 0.0)
            assert np.any(word.coeffs[~off_class] != 0.0)

    def test_qudit_support_classes(self):
        spec = CodeSpec(1, 3, 2.0)
        for k in range(3):
            for q in range(2):
                word = codeword_fock(spec, CodewordId(k, q))
                n = np.arange(word.n_max + 1)
                assert np.all(word.coeffs[(n % 2) != ((-q) % 2)] == 0.0)

    def test_odd_space_leading_phase(self):
        # sector 1 of the odd space leads with +i, fixed by the eigenvalue
        # equations rather than any cosmetic phase convention
        word = codeword_fock(CodeSpec(1, 2, 2.0), CodewordId(1, 1))
        lead = word.coeffs[1] / abs(word.coeffs[1])
        assert abs(lead - 1.0j) < 1e-12


class TestCoherentForm:
    def test_zero_loss_code_is_coherent_state(self):
        spec = CodeSpec(0, 2, 1.5)
        word = codeword_coherent(spec, CodewordId(0, 0))
        target = fock.coherent_state(1.5, word.n_max)
        assert np.max(np.abs(word.coeffs - target.coeffs)) < 1e-12

    def test_one_loss_sector_one_is_rotated_cat(self):
        alpha = 2.0
        spec = CodeSpec(1, 2, alpha)
        word = codeword_coherent(spec, CodewordId(1, 0))
        cat = (
            fock.coherent_state(1j * alpha, word.n_max)
            + fock.coherent_state(-1j * alpha, word.n_max)
        ).normalized()
        assert np.max(np.abs(word.coeffs - cat.coeffs)) < 1e-12

    def test_matches_fock_series_for_two_loss_error_space(self):
        spec = CodeSpec(2, 2, 3.0)
        ident = CodewordId(0, 1)
        a = codeword_coherent(spec, ident)
        b = codeword_fock(spec, ident)
        assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-10

    def test_equivalence_randomized(self, rng):
        # twenty random (L, d, q, k, alpha) instances, both routes agree
        # including the global phase
        for _ in range(20):
            L = int(rng.integers(0, 5))
            d = int(rng.integers(2, 4))
            q = int(rng.integers(0, L + 1))
            k = int(rng.integers(0, d))
            alpha = float(rng.uniform(0.5, 6.0))
            spec = CodeSpec(L, d, alpha)
            u = codeword_coherent(spec, CodewordId(k, q))
            v = codeword_fock(spec, CodewordId(k, q))
            assert abs(1.0 - abs(fock.inner(u, v))) < 1e-10
            assert np.max(np.abs(u.coeffs - v.coeffs)) < 1e-8


class TestOverlaps:
    def test_self_overlap_is_one(self):
        spec = CodeSpec(2, 2, 3.0)
        assert codeword_overlap(spec, 1, 1, 1) == 1.0 + 0.0j

    def test_one_loss_code_space_form(self):
        a2 = 4.0
        got = codeword_overlap(CodeSpec(1, 2, 2.0), 0, 0, 1)
        assert abs(got - np.cos(a2) / np.cosh(a2)) < 1e-14

    def test_one_loss_error_space_form(self):
        a2 = 4.0
        got = codeword_overlap(CodeSpec(1, 2, 2.0), 1, 0, 1)
        assert abs(got - 1j * np.sin(a2) / np.sinh(a2)) < 1e-14

    def test_two_loss_code_space_form(self):
        a2 = 9.0
        got = codeword_overlap(CodeSpec(2, 2, 3.0), 0, 0, 1)
        num = np.exp(-a2) + 2 * np.exp(a2 / 2) * np.cos(np.sqrt(3) * a2 / 2)
        den = np.exp(a2) + 2 * np.exp(-a2 / 2) * np.cos(np.sqrt(3) * a2 / 2)
        assert abs(got - num / den) < 1e-14

    @pytest.mark.parametrize("L,d,q,k1,k2,alpha", [
        (1, 2, 0, 0, 1, 2.0),
        (1, 2, 1, 0, 1, 2.0),
        (2, 2, 0, 0, 1, 3.0),
        (2, 2, 2, 0, 1, 1.5),
        (3, 2, 1, 0, 1, 2.5),
        (1, 3, 0, 0, 2, 2.0),
        (1, 3, 1, 1, 2, 1.0),
    ])
    def test_closed_forms_match_vector_inner_products(self, L, d, q, k1, k2, alpha):
        spec = CodeSpec(L, d, alpha)
        closed = codeword_overlap(spec, q, k1, k2)
        direct = fock.inner(
            codeword_fock(spec, CodewordId(k1, q)),
            codeword_fock(spec, CodewordId(k2, q)),
        )
        assert abs(closed - direct) < 1e-12

    def test_conjugate_on_swapped_indices(self):
        spec = CodeSpec(1, 2, 2.0)
        assert abs(
            codeword_overlap(spec, 1, 0, 1) - np.conj(codeword_overlap(spec, 1, 1, 0))
        ) < 1e-14

    def test_overlap_decays_with_amplitude(self):
        vals = [
            abs(codeword_overlap(CodeSpec(1, 2, a), 0, 0, 1)) for a in (0.8, 2.0, 6.0)
        ]
        assert vals[2] < vals[1] < vals[0]

    def test_amplitude_override(self):
        spec = CodeSpec(1, 2, 2.0)
        damped = codeword_overlap(spec, 0, 0, 1, amplitude_override=1.0)
        assert abs(damped - np.cos(1.0) / np.cosh(1.0)) < 1e-14

    def test_distinct_error_spaces_orthogonal(self):
        spec = CodeSpec(2, 2, 3.0)
        for q1 in range(3):
            for q2 in range(q1 + 1, 3):
                v = fock.inner(
                    codeword_fock(spec, CodewordId(0, q1)),
                    codeword_fock(spec, CodewordId(1, q2)),
                )
                assert abs(v) < 1e-12


class TestCodeEquations:
    def test_one_loss_code_space(self):
        res = verify_code_equations(CodeSpec(1, 2, 2.0), CodewordId(0, 0))
        assert res.parity < 1e-9
        assert res.lowering < 1e-9

    def test_two_loss_error_space_eigenvalue(self):
        # two losses from support 0 mod 3 leave support 1 mod 3, so the
        # q = 2 space carries parity eigenvalue exp(-4 pi i/3) = exp(2 pi i/3)
        spec = CodeSpec(2, 2, 3.0)
        word = codeword_fock(spec, CodewordId(1, 2))
        rotated = fock.parity_phase_apply(word, 3)
        eig = fock.inner(word, rotated)
        assert abs(eig - np.exp(-4j * np.pi / 3)) < 1e-12
        res = verify_code_equations(spec, CodewordId(1, 2))
        assert res.parity < 1e-9
        assert res.lowering < 1e-9

    def test_syndrome_eigenvalues_distinct(self):
        spec = CodeSpec(2, 2, 3.0)
        eigs = []
        for q in range(3):
            word = codeword_fock(spec, CodewordId(0, q))
            eigs.append(fock.inner(word, fock.parity_phase_apply(word, 3)))
        for i in range(3):
            for j in range(i + 1, 3):
                assert abs(eigs[i] - eigs[j]) > 1.0

    def test_zero_loss_parity_trivial(self):
        res = verify_code_equations(CodeSpec(0, 2, 1.0), CodewordId(1, 0))
        assert res.parity == 0.0
        assert res.lowering < 1e-9

    @pytest.mark.parametrize("L,d,alpha", [(1, 2, 2.0), (2, 2, 3.0), (3, 2, 6.0),
                                           (4, 2, 7.0), (5, 2, 9.0), (1, 3, 2.0),
                                           (2, 3, 3.0)])
    def test_residuals_across_specs(self, L, d, alpha):
        spec = CodeSpec(L, d, alpha)
        for k in range(d):
            for q in range(L + 1):
                res = verify_code_equations(spec, CodewordId(k, q))
                assert res.parity < 1e-9, (k, q)
                assert res.lowering < 1e-9, (k, q)


class TestLogicalCoeffs:
    def test_normalization_enforced(self):
        with pytest.raises(ValueError):
            LogicalCoeffs((1.0, 1.0))

    def test_of_normalizes(self):
        c = LogicalCoeffs.of(1.0, 1.0)
        assert abs(abs(c.amplitudes[0]) - 1 / math.sqrt(2)) < 1e-14

    def test_balanced_qutrit(self):
        c = LogicalCoeffs.balanced(3)
        assert c.d == 3
        assert abs(sum(abs(a) ** 2 for a in c.amplitudes) - 1.0) < 1e-14
