"""Acceptance criteria 1-8, one test each.

Each test records a one-line verdict; conftest prints them at the end of the
pytest run. ``python3 tests/test_acceptance.py`` runs the same checks standalone.
"""

import time

import pytest

from rs_maxwell.config import parse_config_text
from rs_maxwell.report import emit_report
from rs_maxwell.suites import run_suite

RESULTS = {}


def _cfg(suite, text=""):
    return parse_config_text(text, suite, env={})


def _timed(suite, text=""):
    t0 = time.perf_counter()
    rep = run_suite(_cfg(suite, text))
    return rep, time.perf_counter() - t0


def _worst(rep, pred):
    sel = [c for c in rep.checks if pred(c.check_id)]
    return max((c.residual for c in sel), default=None), len(sel)


def _record(n, ok, detail):
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    return ok


_cache = {}


def _curved():
    if "curved" not in _cache:
        _cache["curved"] = _timed("curved")
    return _cache["curved"]


def criterion_1():
    run_suite(_cfg("algebra"))  # warm imports
    rep, dt = _timed("algebra")
    worst = max(c.residual for c in rep.checks)
    ok = rep.ok and worst == 0.0 and dt < 1.0
    return _record(1, ok, f"{len(rep.checks)} algebra relations, max residual {worst:.1e}, {dt:.2f} s (< 1 s)")


def criterion_2():
    rep, dt = _timed("covariance", "rotations = 200\nboosts = 200\nbmax = 5.0\n")
    worst = max(c.residual for c in rep.checks)
    ok = rep.ok and worst <= 1e-10 and dt < 5.0
    return _record(2, ok, f"200 rotations + 200 boosts, max residual {worst:.2e} (<= 1e-10), {dt:.2f} s (< 5 s)")


def criterion_3():
    rep, _ = _timed("constitutive", "triples = 100\n")
    inv, _ = _worst(rep, lambda i: i == "constitutive.inverse_pair")
    boosted, _ = _worst(rep, lambda i: i.startswith("constitutive.boosted"))
    osq, _ = _worst(rep, lambda i: i == "constitutive.o_squared")
    eu, _ = _worst(rep, lambda i: i.startswith("constitutive.euclidean"))
    ok = rep.ok and inv <= 1e-13 and boosted <= 1e-10 and osq <= 1e-10 and eu <= 1e-12
    return _record(3, ok, f"inverse {inv:.1e}, boosted {boosted:.1e}, O^2 {osq:.1e}, euclidean {eu:.1e}")


def criterion_4():
    rep, _ = _timed("esposito", "u_samples = 100\n")
    rest, _ = _worst(rep, lambda i: i.startswith("esposito.rest_"))
    rt, _ = _worst(rep, lambda i: i == "esposito.round_trip")
    beq, _ = _worst(rep, lambda i: i == "esposito.beta_equivalence")
    ok = rep.ok and rest == 0.0 and rt <= 1e-12 and beq <= 1e-10
    return _record(4, ok, f"rest frame {rest:.1e}, round trip {rt:.1e}, beta map {beq:.1e}")


def criterion_5():
    rep, dt = _curved()
    cfg = _cfg("curved")
    limits = {
        "pairing": (lambda i: i.endswith(".pairing") or i.endswith(".media_pairing"), 1e-10),
        "pairing_fd": (lambda i: i.endswith("pairing_fd"), 1e-7),  # includes media_pairing_fd
        "connection": (lambda i: ".connection_" in i and not i.endswith("_convergence"), 1e-8),
        "sigma": (lambda i: i.endswith(".sigma_trace"), 1e-12),
        "media": (lambda i: ".media_" in i and "_fd" not in i, 1e-10),
    }
    parts, ok = [], rep.ok and dt < 60.0 and cfg.points >= 10 and cfg.fields >= 20
    for name, (pred, tol) in limits.items():
        w, n = _worst(rep, pred)
        ok = ok and n > 0 and w <= tol
        parts.append(f"{name} {w:.1e}")
    metrics = {c.check_id.split(".")[1] for c in rep.checks}
    ok = ok and len(metrics) == 3
    return _record(5, ok, f"{len(metrics)} metrics x {cfg.points} points x {cfg.fields} fields, "
                          + ", ".join(parts) + f", {dt:.1f} s (< 60 s)")


def criterion_6():
    rep, _ = _timed("evolve", "grid_n = 128\nperiods = 1.0\n")
    got = {c.check_id: c.residual for c in rep.checks}
    cc, en, dv = got["evolve.cross_check"], got["evolve.energy_drift"], got["evolve.divergence"]
    ok = cc <= 1e-8 and en <= 1e-8 and dv <= 1e-10
    return _record(6, ok, f"N=128 one period: cross-check {cc:.1e}, energy drift {en:.1e}, div {dv:.1e}")


def criterion_7():
    rep, _ = _curved()
    conv = [c for c in rep.checks if c.check_id.endswith("_convergence")]
    # residual is coarse/fine inverted, so passing means a ratio >= 3.5
    worst = max(c.residual for c in conv)
    ok = bool(conv) and all(c.passed for c in conv)
    ratio = float("inf") if worst == 0 else 1 / worst
    return _record(7, ok, f"{len(conv)} FD convergence checks, smallest error ratio {ratio:.2f} (>= 3.5)")


def criterion_8():
    texts = {}
    for suite, text in (("algebra", ""), ("covariance", ""), ("constitutive", ""), ("esposito", ""),
                        ("evolve", "")):
        a = emit_report(run_suite(_cfg(suite, text)), "json")
        b = emit_report(run_suite(_cfg(suite, text)), "json")
        texts[suite] = a == b
    a = emit_report(_curved()[0], "json")
    texts["curved"] = a == emit_report(run_suite(_cfg("curved")), "json")
    ok = all(texts.values())
    return _record(8, ok, "byte-identical JSON on rerun: " + ", ".join(f"{k} {'yes' if v else 'NO'}"
                                                                        for k, v in texts.items()))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8]


@pytest.mark.parametrize("fn", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_acceptance(fn):
    assert fn(), RESULTS[int(fn.__name__.split("_")[1])]


if __name__ == "__main__":
    import sys

    failed = 0
    for fn in CRITERIA:
        failed += not fn()
        print(RESULTS[int(fn.__name__.split("_")[1])], flush=True)
    sys.exit(1 if failed else 0)
