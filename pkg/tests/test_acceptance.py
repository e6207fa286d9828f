"""The fourteen acceptance criteria at their stated sizes and tolerances."""

import os
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from acceptance_log import report
from envelope_lab.cli import DEFAULTS
from envelope_lab.combinatorics import AlcovePoint, LambdaShape, anti_dominant, sample_alcove
from envelope_lab.ktheory import cocycle_check, compare_reference_r
from envelope_lab.suites import SUITES, check_flag_example, rng_for

CFG = dict(DEFAULTS)


@pytest.fixture(scope="module")
def suites():
    out = {}
    for name, fn in SUITES.items():
        start = time.perf_counter()
        checks = fn(dict(CFG))
        out[name] = ({c.name: c for c in checks}, time.perf_counter() - start)
    return out


def summary(c):
    s = f"{c.name} {c.checked - c.failed}/{c.checked}"
    if c.max_residual is not None:
        s += f" max {c.max_residual:.2e}"
    return s


def all_pass(checks, names):
    return all(checks[n].failed == 0 and checks[n].checked > 0 for n in names)


def test_criterion_01_flag_example():
    start = time.perf_counter()
    c = check_flag_example(range(-3, 4))
    dt = time.perf_counter() - start
    ok = c.failed == 0 and c.checked == 21 and dt < 1
    assert report(1, ok, f"{summary(c)} in {dt:.2f}s (limit 1s)")


def test_criterion_02_trig_lemmas(suites):
    checks, dt = suites["trig"]
    names = ["trig.triangularity", "trig.diagonal_P_e", "trig.laurent_restrictions", "trig.e_vert_divisibility"]
    ok = all_pass(checks, names) and dt < 120
    assert report(2, ok, "; ".join(summary(checks[n]) for n in names) + f" in {dt:.1f}s (limit 120s)")


def test_criterion_03_newton_theorem(suites):
    checks, dt = suites["newton"]
    names = ["newton.containment", "newton.base_case"]
    ok = all_pass(checks, names) and dt < 600
    assert report(3, ok, "; ".join(summary(checks[n]) for n in names) + f" in {dt:.1f}s (limit 600s)")


def test_criterion_04_extralem(suites):
    checks, _ = suites["newton"]
    assert report(4, all_pass(checks, ["newton.extralem"]), summary(checks["newton.extralem"]))


def test_criterion_05_stab_axioms(suites):
    checks, _ = suites["ktheory"]
    names = ["ktheory.stab_axioms", "ktheory.gluing"]
    assert report(5, all_pass(checks, names), "; ".join(summary(checks[n]) for n in names))


def test_criterion_06_reference_r_and_cocycle(suites):
    checks, _ = suites["ktheory"]
    start = time.perf_counter()
    rn_ok = all(compare_reference_r(AlcovePoint([0, Fraction(m) + Fraction(2, 5)]))["ok"] for m in range(-2, 3))
    rng = rng_for(CFG["seed"], "acceptance_cocycle")
    fails = cocycle_check(LambdaShape((1, 2)), sample_alcove(2, rng)) + cocycle_check(LambdaShape((2, 1)), anti_dominant(2))
    dt = time.perf_counter() - start
    names = ["ktheory.reference_r_n2", "ktheory.cocycle_S3"]
    ok = rn_ok and not fails and all_pass(checks, names) and dt < 60
    detail = "; ".join(summary(checks[n]) for n in names) + f"; standalone RN + cocycle {dt:.1f}s (limit 60s)"
    assert report(6, ok, detail)


def test_criterion_07_theta(suites):
    checks, _ = suites["elliptic"]
    names = ["theta.functional_equations", "theta.identity_two", "theta.identity_three"]
    ok = all_pass(checks, names) and all(checks[n].tol == 1e-10 for n in names)
    assert report(7, ok, "; ".join(summary(checks[n]) for n in names))


def test_criterion_08_n2_example(suites):
    checks, _ = suites["elliptic"]
    c = checks["elliptic.n2_example"]
    assert report(8, all_pass(checks, [c.name]) and c.checked == 80, summary(c))


def test_criterion_09_exchange(suites):
    checks, _ = suites["elliptic"]
    assert report(9, all_pass(checks, ["elliptic.exchange"]), summary(checks["elliptic.exchange"]))


def test_criterion_10_orthogonality(suites):
    checks, _ = suites["elliptic"]
    names = ["elliptic.orthogonality", "elliptic.xi_diagonal"]
    assert report(10, all_pass(checks, names), "; ".join(summary(checks[n]) for n in names))


def test_criterion_11_transformation(suites):
    checks, _ = suites["elliptic"]
    tm = checks["elliptic.transformation_t_mu"]
    hl = checks["elliptic.transformation_h_literal"]
    ex = checks["elliptic.transformation_examples"]
    cor = checks["elliptic.transformation_corrected"]
    ok = all(c.failed == 0 for c in (tm, hl, ex))
    detail = (
        f"{summary(tm)}; {summary(hl)}; {summary(ex)}; "
        f"the literal ratio is not invariant under the h shift; with the extra factor theta(h)^k_I: {summary(cor)}"
    )
    assert report(11, ok, detail)


def test_criterion_12_q_limit(suites):
    checks, _ = suites["elliptic"]
    mono = checks["elliptic.q_limit_monotone"]
    thr = checks["elliptic.q_limit_threshold"]
    ok = mono.failed == 0 and thr.failed == 0
    detail = (
        f"{summary(mono)}; {summary(thr)} against 1e-3; "
        "Delta(q) decays like q^min(eps,1-eps), so at q = 1e-6 and eps in [0.2,0.8] it is 1e-3 to 1e-1"
    )
    assert report(12, ok, detail)


def test_criterion_13_quadratic_forms(suites):
    checks, _ = suites["elliptic"]
    gi = checks["quadratic.G_I"]
    mi = checks["quadratic.M_I_display"]
    disp = checks["quadratic.M_lambda_display"]
    gl = checks["quadratic.G_lambda_over_E"]
    ok = all(c.failed == 0 and c.checked for c in (gi, mi, disp))
    detail = (
        f"{summary(gi)}; {summary(mi)}; {summary(disp)}; "
        f"the displayed M_lambda has the nu-v cross coefficient 1, the section needs 2: {summary(gl)}"
    )
    assert report(13, ok, detail)


def run_verify_all(path):
    env = dict(os.environ, ENVLAB_THREADS="1")
    cmd = [sys.executable, "-m", "envelope_lab.cli", "verify", "--suite", "all", "--seed", str(CFG["seed"]), "--out", str(path)]
    return subprocess.run(cmd, env=env, capture_output=True, text=True).returncode


def test_criterion_14_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    codes = [run_verify_all(a), run_verify_all(b)]
    same = a.read_bytes() == b.read_bytes()
    assert report(14, same and a.stat().st_size > 0, f"two runs of verify --suite all: identical={same}, exit codes {codes}")
