import sys

from hypothesis import HealthCheck, settings

if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

settings.register_profile(
    "mobrec", deadline=None, max_examples=200,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("mobrec")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
