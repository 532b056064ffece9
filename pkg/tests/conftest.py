import os

from hypothesis import HealthCheck, settings

from dzv.poly import HomogeneousPoly, X, Y

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", parent=settings.get_profile("default"), max_examples=300)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def record(criterion: int, ok: bool, detail: str):
    ACCEPTANCE.setdefault(criterion, []).append((ok, detail))
    print(f"criterion {criterion}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        items = ACCEPTANCE[n]
        ok = all(i[0] for i in items)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}")
        for good, detail in items:
            terminalreporter.write_line(f"    [{'pass' if good else 'FAIL'}] {detail}")


# polynomials used across modules
P10 = X ** 2 * Y ** 2 * (X ** 2 - Y ** 2) ** 3
Q10 = X * Y * (X ** 2 - Y ** 2) ** 2 * (4 * X ** 4 - 17 * X ** 2 * Y ** 2 + 4 * Y ** 4)
P14 = P10 * (2 * X ** 4 - X ** 2 * Y ** 2 + 2 * Y ** 4)


def poly(w: int, coeffs) -> HomogeneousPoly:
    return HomogeneousPoly(w, tuple(coeffs))
