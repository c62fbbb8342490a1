import random
from fractions import Fraction

import pytest
from hypothesis import given

import oracles
from bornjordan.exact import HBarPolynomial, I
from bornjordan.operators import (
    QUANTUM_BRACKET_SCALE,
    InexactHbarDivision,
    OperatorPoly,
    adjoint,
    commutator,
    op_mul,
    quantum_bracket,
)
from bornjordan.parser import parse
from bornjordan.polybase import DofMismatch
from strategies import operator_polys, operator_polys_2

qh, ph = OperatorPoly.q(), OperatorPoly.p()
one = OperatorPoly.constant(1)


def op(text, dof=None):
    return OperatorPoly.from_standard_order(parse(text, dof))


def test_bracket_scale_is_minus_i_over_hbar():
    assert QUANTUM_BRACKET_SCALE == HBarPolynomial({-1: -I})


class TestProducts:
    def test_p_times_q(self):
        assert op_mul(ph, qh) == op("q*p - i*hbar")

    def test_p2_times_q2(self):
        assert op_mul(ph**2, qh**2) == op("q^2*p^2 - 4*i*hbar*q*p - 2*hbar^2")

    def test_q_times_q(self):
        assert op_mul(qh, qh) == op("q^2")

    def test_distinct_degrees_of_freedom_commute(self):
        p1, q2 = OperatorPoly.p(1, 2), OperatorPoly.q(2, 2)
        assert op_mul(p1, q2) == op_mul(q2, p1)

    def test_dof_mismatch(self):
        with pytest.raises(DofMismatch):
            op_mul(qh, OperatorPoly.q(1, 2))

    @given(operator_polys, operator_polys)
    def test_matches_rewriting_oracle(self, A, B):
        assert oracles.from_poly(op_mul(A, B)) == oracles.op_mul(oracles.from_poly(A), oracles.from_poly(B))

    @given(operator_polys_2, operator_polys_2)
    def test_matches_rewriting_oracle_two_dof(self, A, B):
        assert oracles.from_poly(op_mul(A, B)) == oracles.op_mul(oracles.from_poly(A), oracles.from_poly(B))

    @given(operator_polys, operator_polys, operator_polys)
    def test_associative(self, A, B, C):
        assert op_mul(op_mul(A, B), C) == op_mul(A, op_mul(B, C))

    @given(operator_polys, operator_polys, operator_polys)
    def test_distributive(self, A, B, C):
        assert op_mul(A, B + C) == op_mul(A, B) + op_mul(A, C)
        assert op_mul(A + B, C) == op_mul(A, C) + op_mul(B, C)

    def test_normal_form_unique_under_reassociation(self):
        rng = random.Random(7)
        letters = [qh, ph]
        for _ in range(30):
            factors = [rng.choice(letters) for _ in range(rng.randint(2, 8))]
            results = set()
            for _ in range(5):
                items = list(factors)
                # multiply adjacent pairs in a random order until one factor remains
                while len(items) > 1:
                    k = rng.randrange(len(items) - 1)
                    items[k:k + 2] = [op_mul(items[k], items[k + 1])]
                results.add(items[0])
            assert len(results) == 1
            word = "".join("q" if f == qh else "p" for f in factors)
            assert oracles.from_poly(results.pop()) == oracles.word_op(word)


class TestBrackets:
    def test_commutator_examples(self):
        assert commutator(qh, ph) == op("i*hbar")
        assert commutator(qh**3, ph**3) == op("9*i*hbar*q^2*p^2 + 18*hbar^2*q*p - 6*i*hbar^3")
        A = op("q^2*p + 3*p")
        assert commutator(A, A).is_zero()

    def test_quantum_bracket_examples(self):
        assert quantum_bracket(qh, ph) == one
        assert quantum_bracket(qh**3, ph**3) == op("9*q^2*p^2 - 18*i*hbar*q*p - 6*hbar^2")
        assert quantum_bracket(op("q^4*p - hbar*p^3"), one).is_zero()

    def test_results_have_no_negative_hbar_powers(self, rng):
        from bornjordan.quantizer import quantize
        from bornjordan.sampling import random_poly

        for _ in range(20):
            A, B = (quantize(random_poly(rng, 1, 5)) for _ in range(2))
            low = quantum_bracket(A, B).min_hbar_power()
            assert low is None or low >= 0

    def test_inexact_division_is_detected(self, monkeypatch):
        # valid products always leave a factor of hbar; fake a broken commutator
        import bornjordan.operators as ops

        monkeypatch.setattr(ops, "commutator", lambda A, B: op("q"))
        with pytest.raises(InexactHbarDivision):
            quantum_bracket(qh, ph)

    @given(operator_polys, operator_polys, operator_polys)
    def test_bilinear_antisymmetric(self, A, B, C):
        assert quantum_bracket(A + B, C) == quantum_bracket(A, C) + quantum_bracket(B, C)
        assert quantum_bracket(A, B) == -quantum_bracket(B, A)

    @given(operator_polys, operator_polys, operator_polys)
    def test_leibniz_keeps_factor_order(self, A, B, C):
        lhs = quantum_bracket(op_mul(A, B), C)
        rhs = op_mul(quantum_bracket(A, C), B) + op_mul(A, quantum_bracket(B, C))
        assert lhs == rhs

    @given(operator_polys_2, operator_polys_2, operator_polys_2)
    def test_jacobi(self, A, B, C):
        total = (quantum_bracket(A, quantum_bracket(B, C)) + quantum_bracket(B, quantum_bracket(C, A))
                 + quantum_bracket(C, quantum_bracket(A, B)))
        assert total.is_zero()

    @given(operator_polys, operator_polys, operator_polys, operator_polys)
    def test_cancellation_identity(self, F1, F2, G1, G2):
        lhs = op_mul(commutator(F1, F2), quantum_bracket(G1, G2))
        rhs = op_mul(quantum_bracket(F1, F2), commutator(G1, G2))
        assert lhs == rhs


class TestAdjoint:
    def test_examples(self):
        assert adjoint(op("q*p")) == op("q*p - i*hbar")
        assert adjoint(op("q^2")) == op("q^2")
        sym = (op_mul(qh, ph) + op_mul(ph, qh)).scale(Fraction(1, 2))
        assert adjoint(sym) == sym

    def test_conjugates_coefficients(self):
        assert adjoint(op("i*q")) == op("-i*q")

    @given(operator_polys)
    def test_involution(self, A):
        assert adjoint(adjoint(A)) == A

    @given(operator_polys_2, operator_polys_2)
    def test_reverses_products(self, A, B):
        assert adjoint(op_mul(A, B)) == op_mul(adjoint(B), adjoint(A))


def test_classical_limit_unhats():
    assert op("q^2*p^2 - 2*i*hbar*q*p").classical_limit() == parse("q^2*p^2")


def test_printing_uses_hats():
    assert str(op_mul(ph**2, qh**2)) == "qh^2*ph^2 - 4*i*hbar*qh*ph - 2*hbar^2"
