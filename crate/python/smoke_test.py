#!/usr/bin/env python3
"""Smoke test for the inductive_py extension module.

Builds are produced by cargo (`cargo build --release -p inductive-py`);
this script locates the compiled cdylib, stages it as an importable
module, and exercises the main types and operations end to end.
"""

import math
import shutil
import sys
import tempfile
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parent.parent


def stage_module() -> None:
    candidates = [
        REPO_ROOT / "target" / "release" / "libinductive_py.so",
        REPO_ROOT / "target" / "debug" / "libinductive_py.so",
        REPO_ROOT / "target" / "release" / "libinductive_py.dylib",
        REPO_ROOT / "target" / "debug" / "libinductive_py.dylib",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit(
            "inductive_py cdylib not found; run "
            "`cargo build --release -p inductive-py` first"
        )
    stage = Path(tempfile.mkdtemp(prefix="inductive-py-"))
    shutil.copy2(built, stage / "inductive_py.so")
    sys.path.insert(0, str(stage))


def approx(a: float, b: float, tol: float = 1e-12) -> bool:
    return abs(a - b) <= tol


def main() -> None:
    stage_module()
    import inductive_py as il

    checks = 0

    def ok(condition: bool, what: str) -> None:
        nonlocal checks
        if not condition:
            sys.exit(f"FAIL: {what}")
        checks += 1
        print(f"  ok: {what}")

    # histories are immutable values
    empty = il.History(2, 1)
    h = empty.append(0, 0).append(0, 0).append(0, 0)
    ok(len(empty) == 0 and len(h) == 3, "append returns a new history")

    # the rule of succession
    carnap = il.carnap_rule([1.0, 1.0])
    p = carnap.predict(h)
    ok(approx(p[0], 0.8, 1e-15), "carnap predicts (3+1)/(3+2) after three heads")
    ok(
        carnap.predict_from_joint(h) == p,
        "ratio-of-joints route agrees with the direct prediction",
    )

    # exchangeability of the closed form
    ht = il.polya_sequence_probability([0, 1], [1.0, 1.0])
    th = il.polya_sequence_probability([1, 0], [1.0, 1.0])
    ok(approx(ht, 1.0 / 6.0, 1e-15) and ht == th, "polya probability is exchangeable")

    audit = carnap.audit("exchangeability", max_len=4, tolerance=1e-12)
    ok(audit["passed"], "carnap passes the exchangeability audit")

    # the analogical rule: worked value and symmetry dichotomy
    analogical = il.analogical_rule([[1.0, 1.0]] * 3, beta=0.5, gamma=0.25)
    worked = il.History(3, 2)
    for outcome, ty in [(0, 0), (0, 0), (1, 0), (0, 1), (0, 1), (0, 1), (0, 1), (2, 1)]:
        worked = worked.append(outcome, ty)
    p = analogical.predict(worked, next_type=0)
    ok(approx(p[0], 5.0 / 8.5, 1e-15), "analogical prediction matches the worked value")

    generalized = analogical.audit("generalized-partial-exchangeability", max_len=4, tolerance=1e-12)
    partial = analogical.audit("partial-exchangeability", max_len=4, tolerance=1e-12)
    ok(
        generalized["passed"] and not partial["passed"],
        "generalized partial exchangeability holds while the full version fails",
    )

    # urn sampler: deterministic and consistent with the rule's law
    a = il.urn_simulate([[1.0, 1.0]] * 3, 0.5, 0.25, [0, 1, 0, 1], seed=7)
    b = il.urn_simulate([[1.0, 1.0]] * 3, 0.5, 0.25, [0, 1, 0, 1], seed=7)
    ok(a == b and len(a) == 4, "urn simulation is reproducible for a seed")

    outcomes, predictions = analogical.simulate([0, 1, 0], seed=3)
    ok(
        len(outcomes) == 3 and approx(sum(predictions[0]), 1.0, 1e-12),
        "rule-driven simulation returns per-step predictions",
    )

    # beta positivity and the limiting convex combination
    report = il.beta_positivity([[1.0, 1.0]] * 3, 0.5, 0.5)
    ok(
        report["equivalence_holds"] and report["monotone_in_beta"],
        "beta positivity equivalence and monotone sweep",
    )
    limit = il.limiting_predictive(
        [0.8, 0.1, 0.1], [0.2, 0.4, 0.4], [[1.0, 1.0]] * 3, 1.0, 1.0, type_ratio=0.5
    )
    ok(approx(limit[0], 0.5, 1e-15), "convex-combination limit at beta = 1")

    # mixtures: transient analogy systems
    skyrms = il.skyrms_rule([[4.0, 4.0, 0.25], [0.25, 4.0, 4.0]])
    p = skyrms.predict(il.History(3, 1).append(0, 0))
    ok(approx(p[1], 16.0 / 37.0, 1e-12), "wheel mixture raises the neighbor outcome")
    ok(
        not skyrms.audit("sufficientness-classic", max_len=3, tolerance=1e-12)["passed"],
        "mixture violates classic sufficientness",
    )

    posterior = il.mixture_posterior([[10.0, 1.0], [1.0, 10.0]], [0, 0, 0])
    ok(approx(posterior[0], 220.0 / 221.0, 1e-12), "mixture posterior tilts as computed")

    maher = il.maher_rule(0.5, [1.0] * 4, [1.0, 1.0], [1.0, 1.0])
    after_q2 = maher.predict(il.History(4, 1).append(1, 0))
    after_q4 = maher.predict(il.History(4, 1).append(3, 0))
    ok(
        approx(after_q2[0], 19.0 / 90.0) and approx(after_q4[0], 14.0 / 90.0),
        "Maher analogy effect: Q1 likelier after Q2 than after Q4",
    )

    # Wright manifold
    ok(
        il.check_on_manifold(il.wright_manifold_point(0.5, 0.5)),
        "independent points lie on the Wright manifold",
    )
    ok(not il.check_on_manifold([0.5, 0.0, 0.0, 0.5]), "dependent point is off the manifold")

    # Dirichlet-mixture Monte Carlo brackets the closed form
    estimate, std_error = il.dirichlet_mc_predictive([1.0, 1.0], [3, 0], 200_000, seed=5)
    ok(
        abs(estimate[0] - 0.8) < 4.0 * std_error[0] and std_error[0] < 0.01,
        "Monte Carlo estimate brackets the rule of succession",
    )

    # error surface
    try:
        il.carnap_rule([1.0, -1.0])
    except ValueError as e:
        ok("positive" in str(e), "invalid parameters raise ValueError")
    else:
        sys.exit("FAIL: invalid parameters were accepted")

    print(f"smoke test passed ({checks} checks), module version {il.__version__}")


if __name__ == "__main__":
    main()
