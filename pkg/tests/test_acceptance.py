"""Acceptance gate: one test per criterion, each at its stated tolerance.

Run with `pytest tests/test_acceptance.py -v -s` to see one PASS line per
criterion.
"""

import importlib
import time

import numpy as np
import pytest

from decoynoise.analysis import find_crossover
from decoynoise.channels import (
    AmplitudeDamping,
    CollectiveDephasing,
    CollectiveRotation,
    PhaseDamping,
    apply_kraus_channel,
    apply_noise,
    kraus_ad,
    kraus_pd,
)
from decoynoise.cli import run
from decoynoise.eavesdrop import (
    all_label_detections,
    intercept_resend_bb84,
    wrong_pair_bell_attack,
)
from decoynoise.fidelity import (
    bb84_average_fidelity,
    closed_form,
    simulate_fidelity,
    verify_table,
)
from decoynoise.states import BB84Average, BellPair, Cluster, WState

from conftest import random_density
from test_eavesdrop import oracle_wrong_pair

fidelity_mod = importlib.import_module("decoynoise.fidelity")


def _ok(n, text):
    print(f"ACCEPTANCE {n}: {text} PASS")


def test_criterion_1_table_oracle_equivalence():
    start = time.perf_counter()
    reports = verify_table(21)
    elapsed = time.perf_counter() - start
    worst = max(r.max_abs_deviation for r in reports)
    assert len(reports) == 24
    assert worst < 1e-12
    assert elapsed < 5.0
    _ok(1, f"all 24 cells deviate < 1e-12 (worst {worst:.2e}) in {elapsed:.2f}s")


def test_criterion_2_decoherence_free_suite():
    cases = [
        (BellPair("phi+"), CollectiveDephasing, np.linspace(0, 2 * np.pi, 21)),
        (BellPair("phi-"), CollectiveDephasing, np.linspace(0, 2 * np.pi, 21)),
        (BellPair("psi+"), CollectiveRotation, np.linspace(0, 2 * np.pi, 21)),
        (BellPair("phi-"), CollectiveRotation, np.linspace(0, 2 * np.pi, 21)),
        (WState(), CollectiveDephasing, np.linspace(0, 2 * np.pi, 21)),
    ]
    for scheme, family, grid in cases:
        for p in grid:
            assert simulate_fidelity(scheme, family(p)) == pytest.approx(1.0, abs=1e-12)
    _ok(2, "five decoherence-free (scheme, channel) pairs hold fidelity 1")


def test_criterion_3_pd_equivalence():
    entangled = [BellPair(lab) for lab in ("psi+", "psi-", "phi+", "phi-")] + [Cluster()]
    for eta in np.linspace(0.0, 1.0, 21):
        values = [simulate_fidelity(s, PhaseDamping(eta)) for s in entangled]
        assert max(values) - min(values) <= 1e-12
    _ok(3, "all five entangled schemes agree under phase damping")


def test_criterion_4_cr_equivalence():
    for theta in np.linspace(0.0, 2 * np.pi, 21):
        noise = CollectiveRotation(theta)
        assert abs(bb84_average_fidelity(noise) - simulate_fidelity(Cluster(), noise)) <= 1e-12
        assert abs(
            simulate_fidelity(BellPair("psi-"), noise) - simulate_fidelity(BellPair("phi+"), noise)
        ) <= 1e-12
    _ok(4, "BB84 average equals cluster and psi- equals phi+ under rotation")


def test_criterion_5_ad_ordering():
    for eta in np.arange(0.05, 0.96, 0.05):
        noise = AmplitudeDamping(float(eta))
        psi = simulate_fidelity(BellPair("psi+"), noise)
        cluster = simulate_fidelity(Cluster(), noise)
        phi = simulate_fidelity(BellPair("phi+"), noise)
        assert psi > cluster > phi
    assert simulate_fidelity(BellPair("psi+"), AmplitudeDamping(1.0)) == pytest.approx(0.25, abs=1e-12)
    assert simulate_fidelity(Cluster(), AmplitudeDamping(1.0)) == pytest.approx(0.25, abs=1e-12)
    _ok(5, "psi > cluster > phi strictly on (0,1) and both hit 0.25 at eta=1")


def test_criterion_6_ad_crossover():
    root = find_crossover(BB84Average(), BellPair("psi+"), AmplitudeDamping, 0.3, 0.9)
    assert 0.5 <= root <= 0.65
    assert abs(root - 0.583) <= 0.01
    grid = np.arange(0.5, 0.65, 1e-4)
    diffs = np.array(
        [
            closed_form(BB84Average(), AmplitudeDamping(e))
            - closed_form(BellPair("psi+"), AmplitudeDamping(e))
            for e in grid
        ]
    )
    flip = int(np.nonzero(np.sign(diffs[1:]) != np.sign(diffs[:-1]))[0][0])
    assert abs(root - grid[flip]) < 1e-3
    _ok(6, f"crossover at {root:.4f}, confirmed by the 1e-4-step scan")


def test_criterion_7_eavesdropping():
    assert intercept_resend_bb84().detection_probability == 0.25
    _, oracle_value = oracle_wrong_pair("psi+", (2, 3))
    impl = wrong_pair_bell_attack("psi+", (2, 3)).detection_probability
    assert abs(impl - oracle_value) < 1e-12
    detections = list(all_label_detections((2, 3)).values())
    assert all(abs(d - detections[0]) < 1e-12 for d in detections)
    _ok(7, f"intercept rate 0.25 exactly; wrong-pair detection {impl:.4f} matches the oracle")


def test_criterion_8_channel_validity():
    rng = np.random.default_rng(20260811)
    for _ in range(1000):
        n = int(rng.integers(1, 5))
        rho = random_density(rng, n, mixture=2)
        kind = int(rng.integers(0, 4))
        if kind < 2:
            ch = (kraus_ad if kind == 0 else kraus_pd)(float(rng.random()))
            total = sum(op.conj().T @ op for op in ch.operators)
            assert np.max(np.abs(total - np.eye(2))) <= 1e-12
            out = apply_kraus_channel(rho, ch).matrix
        elif kind == 2:
            out = apply_noise(rho, CollectiveDephasing(float(rng.uniform(0, 2 * np.pi)))).matrix
        else:
            out = apply_noise(rho, CollectiveRotation(float(rng.uniform(0, 2 * np.pi)))).matrix
        assert abs(np.trace(out) - 1.0) <= 1e-12
        assert np.max(np.abs(out - out.conj().T)) <= 1e-12
        assert np.linalg.eigvalsh(out)[0] >= -1e-10
    _ok(8, "1000 randomized applications keep completeness, trace, Hermiticity, PSD")


def test_criterion_9_cli_determinism_and_mutation(tmp_path, capsys, monkeypatch):
    args = ["sweep", "--noise", "ad", "--schemes", "bb84,psi+,phi+,cluster", "--grid", "21"]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(args + ["--out", str(a)]) == 0
    assert run(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()

    assert run(["verify-table", "--grid", "5"]) == 0

    true_form = fidelity_mod.closed_form

    def skewed(scheme, noise):
        value = true_form(scheme, noise)
        if isinstance(scheme, BB84Average) and isinstance(noise, PhaseDamping):
            value += 1e-6
        return value

    monkeypatch.setattr(fidelity_mod, "closed_form", skewed)
    assert run(["verify-table", "--grid", "5"]) == 2
    monkeypatch.undo()
    capsys.readouterr()
    _ok(9, "byte-identical sweeps; verify-table exits 0 clean and 2 when perturbed")
