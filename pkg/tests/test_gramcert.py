"""Gram certificates: exact verification, symbolic equations, the
multiplier pipeline, and the leading-term monomial filter."""

import random
from fractions import Fraction

import numpy as np
import pytest

from starpos import fock, gramcert, weyl
from starpos.gramcert import AffineForm
from starpos.scalars import I, Scalar


def test_conjugated_certificate_verifies():
    cert = gramcert.conjugated_certificate()
    assert gramcert.verify(cert).ok
    for block in cert.blocks:
        assert gramcert.psd_exact(block.matrix)


def test_rank_one_certificate_verifies():
    assert gramcert.verify(gramcert.rank_one_certificate()).ok


def test_zero_certificate():
    cert = gramcert.GramCertificate(
        target=weyl.WeylElement.zero(),
        blocks=[gramcert.GramBlock([weyl.x_elem()], [[Scalar(0)]])])
    assert gramcert.verify(cert).ok


def test_verify_reports_discrepancy():
    cert = gramcert.conjugated_certificate()
    cert.blocks[0].matrix[0][0] = cert.blocks[0].matrix[0][0] + 1
    res = gramcert.verify(cert)
    assert not res.ok
    assert not res.discrepancy.is_zero()


def test_block_shape_validation():
    with pytest.raises(gramcert.CertificateFormatError):
        gramcert.GramBlock([weyl.x_elem()], [[Scalar(1), Scalar(0)]])
    with pytest.raises(gramcert.CertificateFormatError):
        gramcert.GramBlock([weyl.x_elem(), weyl.y_elem()],
                           [[Scalar(1), Scalar(2)], [Scalar(3), Scalar(1)]])


def test_psd_exact_examples():
    assert gramcert.psd_exact(gramcert.block_matrix_small())
    assert gramcert.psd_exact(gramcert.block_matrix_large())
    assert not gramcert.psd_exact([[1, 2], [2, 1]])
    with pytest.raises(ValueError):
        gramcert.psd_exact([[0, 1], [2, 0]])


def test_psd_exact_vs_eigenvalue_oracle():
    rng = random.Random(55)
    checked = 0
    for _ in range(100):
        n = rng.randint(1, 6)
        m = [[Scalar(Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                     0, Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
              for _ in range(n)] for _ in range(n)]
        herm = [[(m[i][j] + m[j][i].conj()) * Fraction(1, 2) for j in range(n)]
                for i in range(n)]
        arr = np.array([[complex(x) for x in row] for row in herm])
        eigs = np.linalg.eigvalsh(arr)
        exact = gramcert.psd_exact(herm)
        if eigs.min() > 1e-9:
            assert exact
            checked += 1
        elif eigs.min() < -1e-9:
            assert not exact
            checked += 1
    assert checked > 60


def test_psd_mutation_detection():
    delta = Fraction(1, 100)
    for base in (gramcert.block_matrix_small(), gramcert.block_matrix_large()):
        n = len(base)
        arr = np.array([[float(x) for x in row] for row in base])
        detected = checked = 0
        for i in range(n):
            for j in range(n):
                for sign in (1, -1):
                    mutated = [row[:] for row in base]
                    mutated[i][j] += sign * delta
                    mutated[j][i] = mutated[i][j]
                    marr = arr.copy()
                    marr[i][j] += float(sign * delta)
                    marr[j][i] = marr[i][j]
                    eig = np.linalg.eigvalsh(marr).min()
                    exact = gramcert.psd_exact(mutated)
                    if eig < -1e-9:
                        assert not exact
                        detected += 1
                        checked += 1
                    elif eig > 1e-9:
                        assert exact
                        checked += 1
        assert detected > 0  # mutations that break PSD exist and are caught
        assert checked > 0


def _displayed_equations():
    # the six tagged equations, keyed by X,Y monomial, as (coeffs, const)
    # in the orientation used by the multiplier combination
    return {
        (0, 0): ({"lam": 1, "c11": -1, "c32": 1, "c41": 1, "c62": -2}, 0),
        (0, 2): ({"c33": 1, "c36": 1, "c63": -2, "c66": -2}, 2),
        (1, 1): ({"c14": -1, "c23": -1, "c32": 1, "c35": 2, "c41": 1,
                  "c44": 2, "c53": 2, "c62": -4, "c65": -6}, 10),
        (2, 0): ({"c22": -1, "c52": 3}, 0),
        (2, 4): ({"c66": 1}, -1),
        (4, 2): ({"c55": 1}, -1),
    }


def test_six_equations_match_displayed_forms():
    system = gramcert.SymbolicGram(gramcert.six_monomials())
    equations = gramcert.coefficient_equations(weyl.build_lk(5), system)
    assert len(equations) == 16
    for key, (coeffs, const) in _displayed_equations().items():
        expected = AffineForm.of(coeffs, const)
        assert gramcert.oriented_equation(equations, key) == expected, key


def test_equations_linear_consistency():
    # substituting the exact rank-one solution kills all 16 equations
    system = gramcert.SymbolicGram(gramcert.six_monomials())
    equations = gramcert.coefficient_equations(weyl.build_lk(5), system)
    w = [[0, Fraction(3, 2), Fraction(1, 2), 0, 0, 0],
         [0, Fraction(3, 2), Fraction(1, 2), 0, 1, 1]]
    assignment = {"lam": Scalar(Fraction(3, 2))}
    for i in range(6):
        for j in range(6):
            assignment[f"c{i + 1}{j + 1}"] = Scalar(
                sum(Fraction(w[k][i]) * Fraction(w[k][j]) for k in range(2)))
    for key, eq in equations.items():
        assert eq.evaluate(assignment).is_zero(), key


def test_random_multiplier_combinations_stay_consistent():
    # scaling and summing equations commutes with substitution
    rng = random.Random(41)
    system = gramcert.SymbolicGram(gramcert.six_monomials())
    equations = gramcert.coefficient_equations(weyl.build_lk(5), system)
    keys = list(equations)
    assignment = {"lam": Scalar(Fraction(3, 2))}
    w = [[0, Fraction(3, 2), Fraction(1, 2), 0, 0, 0],
         [0, Fraction(3, 2), Fraction(1, 2), 0, 1, 1]]
    for i in range(6):
        for j in range(6):
            assignment[f"c{i + 1}{j + 1}"] = Scalar(
                sum(Fraction(w[k][i]) * Fraction(w[k][j]) for k in range(2)))
    for _ in range(20):
        combo = AffineForm.of()
        for key in keys:
            combo = combo + equations[key].scale(Fraction(rng.randint(-5, 5)))
        assert combo.evaluate(assignment).is_zero()


def test_lower_bound_pipeline():
    report = gramcert.lower_bound_pipeline()
    assert report.identity_ok and report.psd_ok
    assert report.bound == Fraction(3, 2)


def test_pipeline_mutation_fails_identity_not_psd():
    mutated = gramcert.step3_trace_matrix()
    mutated[0][0] = Fraction(2)
    report = gramcert.lower_bound_pipeline(trace_matrix=mutated, strict=False)
    assert report.psd_ok
    assert not report.identity_ok
    with pytest.raises(gramcert.PipelineError):
        gramcert.lower_bound_pipeline(trace_matrix=mutated)


def test_pipeline_zero_multipliers_fail():
    report = gramcert.lower_bound_pipeline(multipliers=[0] * 6, strict=False)
    assert not report.identity_ok


def test_step2_consequence():
    e_x4, e_y4 = gramcert.step2_consequence_equations()
    assert e_x4 == AffineForm.of({"b44": -1, "alpha": Fraction(-1, 4)})
    assert e_y4 == AffineForm.of({"b66": -1, "alpha": Fraction(-1, 4)})


def test_step1_monomial_filter_cases():
    l5 = weyl.build_lk(5)
    names = lambda d: {gramcert.monomial_name(m)
                       for m in gramcert.step1_monomial_filter(d, l5)}
    assert names(0) == {"1", "p", "q", "p^2", "p*q", "q^2", "p*q^2", "p^2*q"}
    assert names(1) == {"1", "p", "q", "p*q"}
    assert names(2) == {"1"}
    assert names(3) == set()


def test_step1_filter_requires_positive_lead():
    with pytest.raises(ValueError):
        gramcert.step1_monomial_filter(1, -weyl.build_lk(5))


def test_certificate_soundness_chain():
    # verified certificate with trivial conjugator implies ladder positivity
    cert = gramcert.rank_one_certificate()
    assert gramcert.verify(cert).ok
    for level in range(0, 9):
        assert fock.psd_truncated(cert.target, level)
    # conjugated form: the conjugated expansion itself stays positive
    conj = gramcert.conjugated_certificate()
    lhs = conj.conjugator.star() * conj.target * conj.conjugator
    for level in range(0, 9):
        assert fock.psd_truncated(lhs, level)


def test_affine_form_algebra():
    f = AffineForm.of({"x": 1}, 2)
    g = AffineForm.of({"x": -1, "y": I}, -2)
    assert (f + g) == AffineForm.of({"y": I})
    assert f.scale(2) == AffineForm.of({"x": 2}, 4)
    assert (f + f.scale(-1)).is_zero()
    with pytest.raises(KeyError):
        f.evaluate({})


def test_json_round_trip_and_errors():
    data = {
        "algebra": "weyl-xy",
        "target": "Y^2*X^2*Y^2 + (-Y)*(X^4 - 5*X^2)*Y + 1.4",
        "conjugator": "1 + X^2",
        "blocks": [
            {"monomials": ["X^3*Y", "X^2*Y^2"],
             "matrix": [["253/100", "121/100"], ["121/100", "29/50"]]},
            {"monomials": ["X", "X^3", "X^2*Y", "X*Y^2", "X^4*Y + X^3*Y^2"],
             "matrix": [["251/25", "1491/100", "911/50", "27/10", "1537/500"],
                        ["1491/100", "4657/200", "1357/50", "3711/1000", "951/200"],
                        ["911/50", "1357/50", "1681/50", "26/5", "549/100"],
                        ["27/10", "3711/1000", "26/5", "1", "71/100"],
                        ["1537/500", "951/200", "549/100", "71/100", "1"]]},
        ],
    }
    cert = gramcert.certificate_from_json(data)
    assert gramcert.verify(cert).ok

    strict = dict(data)
    strict["forbid_decimals"] = True
    with pytest.raises(gramcert.CertificateFormatError):
        gramcert.certificate_from_json(strict)

    for broken in (
        {},  # no target
        {"target": "X", "blocks": []},  # no blocks
        {"target": "X", "blocks": [{"monomials": ["X"], "matrix": [["1", "2"]]}]},
        {"target": "Z", "blocks": [{"monomials": ["X"], "matrix": [["1"]]}]},
        {"target": "X", "algebra": "weyl-zz",
         "blocks": [{"monomials": ["X"], "matrix": [["1"]]}]},
    ):
        with pytest.raises(gramcert.CertificateFormatError):
            gramcert.certificate_from_json(broken)


def test_extra_summands_path():
    # target = X* X + N as one block plus an extra summand
    x = weyl.x_elem()
    n = weyl.number_op()
    cert = gramcert.GramCertificate(
        target=x.star() * x + n,
        blocks=[gramcert.GramBlock([x], [[Scalar(1)]])],
        extra=[n])
    assert gramcert.verify(cert).ok
