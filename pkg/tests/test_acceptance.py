"""Acceptance criteria, each at its stated tolerance and time limit.

Every test prints one ``ACCEPTANCE <n> ...: PASS|FAIL`` line to the terminal
(also visible without ``-s``) before asserting.
"""

import json
import os
import random
import subprocess
import sys
import time

import pytest

from qtorus import algebra, cli, formats, invariants, lattice, oracle, predict, report, selftest
from qtorus.errors import HypothesisFailed
from qtorus.lattice import Sublattice

from conftest import DATA, commutative_torus


@pytest.fixture
def verdict(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {title}: {'PASS' if ok else 'FAIL'}{' (' + detail + ')' if detail else ''}")
        assert ok, detail

    return emit


def _timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


def test_01_four_generator_analyze(verdict):
    def work():
        pf = formats.read_presentation(DATA / "example1.qt")
        return report.analyze(pf.torus)

    r, dt = _timed(work)
    ok = (
        r.lambda_rank == 3
        and r.center_rank == 0
        and r.kdim.exact
        and r.kdim.lower == 3
        and Sublattice.span(r.kdim.witness, 4) == Sublattice.span([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)], 4)
        and r.dichotomy.values == (1, 3)
        and dt < 1.0
    )
    verdict(1, "four-generator torus analyze", ok, f"{dt:.3f}s")


def test_02_four_generator_extend(verdict):
    def work():
        pf = formats.read_presentation(DATA / "example1.qt")
        return pf, report.extend(pf.torus, pf.sigma)

    (pf, r), dt = _timed(work)
    e = r.extension
    Qs = algebra.skew_extension(pf.torus, pf.sigma)
    b = Qs.basis
    p1, p4 = b.labels.index("p1"), b.labels.index("p4")
    ok = (
        e.sigma_rank == 4
        and e.trivial_intersection
        and Qs.q(0, 4) == tuple(-int(k == p1) for k in range(len(b.labels)))
        and Qs.q(4, 3) == b.unit(p4)
        and {(x.i, x.j): x.value for x in e.q_star.entries}.get((1, 5)) == "p1^-1"
        and e.superset.values == (2, 4)
        and e.forbidden == (1, 3, 5)
        and dt < 1.0
    )
    verdict(2, "four-generator torus extend", ok, f"{dt:.3f}s")


def test_03_cocycle_identity(verdict):
    rng = random.Random(selftest.SEED + 4)
    failures = sum(not selftest._cocycle_case(rng) for _ in range(1000))
    verdict(3, "cocycle identity on 1000 triples", failures == 0, f"{failures} failures")


def test_04_relations_and_commutator(verdict):
    rng = random.Random(selftest.SEED + 5)

    def work():
        bad = 0
        for _ in range(100):
            Q = selftest.random_presentation(rng, max_n=4)
            pair = (selftest.random_vector(rng, Q.n, 3), selftest.random_vector(rng, Q.n, 3))
            bad += not selftest.check_relations(Q, [pair])
        return bad

    bad, dt = _timed(work)
    verdict(4, "defining relations and commutator", bad == 0 and dt < 10, f"{bad} failures, {dt:.2f}s")


def test_05_snf_hnf_certification(verdict):
    rng = random.Random(selftest.SEED + 2)

    def work():
        bad = 0
        for _ in range(500):
            A = selftest.random_matrix(rng)
            ok = selftest.check_snf(A) and selftest.check_hnf(A)
            ok = ok and oracle.snf_oracle(A).D == lattice.snf(A).D
            ok = ok and lattice.rank(A) == oracle.bareiss_rank(A.rows)
            bad += not ok
        return bad

    bad, dt = _timed(work)
    verdict(5, "SNF/HNF certification on 500 matrices", bad == 0 and dt < 30, f"{bad} failures, {dt:.2f}s")


def test_06_isotropic_rank_agreement(verdict):
    rng = random.Random(selftest.SEED + 7)

    def work():
        bad = 0
        for _ in range(100):
            C = selftest.random_alternating(rng, rng.randint(2, 6))
            bad += not selftest.check_isotropic(C)
        return bad

    bad, dt = _timed(work)
    verdict(6, "closed form vs isotropic enumeration", bad == 0 and dt < 60, f"{bad} failures, {dt:.2f}s")


def test_07_center_correctness(verdict):
    rng = random.Random(selftest.SEED + 6)

    def work():
        bad, outside = 0, []
        for _ in range(200):
            Q = selftest.random_presentation(rng, max_n=4)
            Z = invariants.center_lattice(Q)
            E = [tuple(int(i == k) for i in range(Q.n)) for k in range(Q.n)]
            zero = Q.basis.zero()
            bad += any(algebra.commutator_lambda(z, e, Q) != zero for z in Z.rows for e in E)
            if len(outside) < 50 and Z.rank < Q.n:
                while True:
                    v = selftest.random_vector(rng, Q.n, 3)
                    if not lattice.member(v, Z):
                        break
                outside.append((Q, v, E, zero))
        violated = sum(any(algebra.commutator_lambda(v, e, Q) != zero for e in E) for Q, v, E, zero in outside)
        return bad, len(outside), violated

    (bad, k, violated), dt = _timed(work)
    ok = bad == 0 and k == 50 and violated == 50 and dt < 10
    verdict(7, "center correctness", ok, f"{bad} bad bases, {violated}/{k} outside vectors violate, {dt:.2f}s")


def test_08_hypothesis_failure_paths(verdict, capsys):
    n = 3
    Q = commutative_torus(n)
    try:
        predict.dichotomy_set(Q, invariants.kdim(Q))
        raised = False
    except HypothesisFailed as exc:
        raised = exc.kdim == n
    r = report.analyze(Q)
    recorded = r.dichotomy.status == report.HYPOTHESIS_FAILED and r.dichotomy.hypotheses[0].detail == f"K.dim = {n}, n = {n}"
    codes = [cli.run(["extend", str(DATA / "shared_generator.qt")]) for _ in range(2)]
    capsys.readouterr()
    ok = raised and recorded and codes == [3, 3]
    verdict(8, "hypothesis-failure paths", ok, f"extend exit codes {codes}")


def test_09_holonomic_bound(verdict):
    pf = formats.read_presentation(DATA / "example1.qt")
    a = report.analyze(pf.torus).holonomic_bound
    b = report.analyze(commutative_torus(4)).holonomic_bound
    verdict(9, "holonomic bound", (a, b) == (1, 0), f"four-generator {a}, commutative {b}")


def _cli(*argv, env=None):
    full_env = dict(os.environ, **(env or {}))
    out = subprocess.run(
        [sys.executable, "-m", "qtorus.cli", *argv], capture_output=True, env=full_env, timeout=600
    )
    return out.returncode, out.stdout


def test_10_determinism(verdict):
    ex = str(DATA / "example1.qt")
    analyze = [
        _cli("analyze", ex, "--json"),
        _cli("analyze", ex, "--json"),
        _cli("extend", ex, "--json"),
        _cli("extend", ex, "--json"),
        _cli("analyze", ex, "--json", env={"QTORUS_PURE_PYTHON": "1"}),
    ]
    json.loads(analyze[0][1])
    same_analyze = analyze[0] == analyze[1] == analyze[4] and analyze[2] == analyze[3]
    selftests = [
        _cli("selftest"),
        _cli("selftest", "--jobs", "2"),
        _cli("selftest", "--quick", env={"QTORUS_PURE_PYTHON": "1"}),
        _cli("selftest", "--quick", "--jobs", "2"),
    ]
    same_selftest = selftests[0] == selftests[1] and selftests[2] == selftests[3] and selftests[0][0] == 0
    verdict(
        10,
        "byte-identical reruns across parallelism and backends",
        same_analyze and same_selftest,
        f"analyze identical: {same_analyze}, selftest identical: {same_selftest}",
    )
