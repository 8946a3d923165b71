import sys

import pytest

from recdiv import _backend
from recdiv.recurrence import RecurrenceSpec

FIB = RecurrenceSpec((1, 1), (0, 1))
PELL = RecurrenceSpec((2, 1), (0, 1))
# u_n = 2^n - 2 and u_n = 3^n - 9
TWO_POW = RecurrenceSpec((3, -2), (-1, 0))
THREE_POW = RecurrenceSpec((4, -3), (-8, -6))
TRIB = RecurrenceSpec((1, 1, 1), (0, 0, 1))
# power sums of the Tribonacci roots
TRIB_TRACE = RecurrenceSpec((1, 1, 1), (3, 1, 3))
MERSENNE = RecurrenceSpec((3, -2), (0, 1))


backends = [pytest.param(_backend.python_kernels, id="python")]
if _backend.compiled_kernels is not None:
    backends.append(pytest.param(_backend.compiled_kernels, id="compiled"))


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        status, title = results[number]
        terminalreporter.write_line(f"CRITERION {number:02d} {status}  {title}")
