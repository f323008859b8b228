"""Thirteen end-to-end acceptance checks, one test per criterion.

Each test prints one "[criterion N] PASS/FAIL: details" line (visible with
pytest -s) and asserts the check passed.

Criterion 6 is expected to fail its alpha=2 clause and is left to do so: for
Gaussian coefficients the truncated wavelet series is an orthogonal
projection of the field, so the relative RMS discrepancy against the direct
evaluation has an analytic floor sqrt(1 - retained variance fraction) that
exceeds the 10% bound at depth n=6 over the entire admissible configuration
space (about 14% at the most favorable configuration, about 26% at the
pinned one). The strict-decrease clause and the alpha=1.5 clause both hold.
The check runs faithfully rather than loosening the bound.
"""

from stablesheet import acceptance


def _run(criterion_id):
    result = acceptance.CRITERIA[criterion_id]()
    status = "PASS" if result["passed"] else "FAIL"
    print(f"[criterion {criterion_id}] {status}: {result['details']}",
          flush=True)
    assert result["passed"], result["details"]


def test_criterion_1_wavelet_validity():
    _run(1)


def test_criterion_2_kernel_quadrature_oracles():
    _run(2)


def test_criterion_3_coefficient_decay():
    _run(3)


def test_criterion_4_distributional_correctness():
    _run(4)


def test_criterion_5_operator_scaling():
    _run(5)


def test_criterion_6_truncation_transfer():
    _run(6)


def test_criterion_7_holder_convergence():
    _run(7)


def test_criterion_8_coefficient_growth():
    _run(8)


def test_criterion_9_directional_regularity():
    _run(9)


def test_criterion_10_local_times():
    _run(10)


def test_criterion_11_dimension_formula_and_estimates():
    _run(11)


def test_criterion_12_localtime_scaling_law():
    _run(12)


def test_criterion_13_engineering_determinism():
    _run(13)
