import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=500)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


# one summary line per acceptance criterion, built from test outcomes
CRITERIA = {
    1: "Krawtchouk table exactness",
    2: "classical spectral law vs matrix powers",
    3: "roots on the unit circle and special factorisations",
    4: "coefficient formula vs Vandermonde solve",
    5: "three-way wave-vector agreement",
    6: "unitarity and reality",
    7: "mode polynomial roots contained in mode spectrum",
    8: "identity suite",
    9: "limit distributions vs Cesaro averages",
    10: "arcsine decomposition halves",
}
_outcomes = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if not name.startswith("test_criterion_"):
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        k = int(name.split("_")[2])
        _outcomes.setdefault(k, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for k in sorted(CRITERIA):
        runs = _outcomes.get(k)
        if runs is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(runs) else "FAIL"
            status += f" ({sum(runs)}/{len(runs)} checks)"
        terminalreporter.write_line(f"criterion {k:2d}: {status:<20} {CRITERIA[k]}")
