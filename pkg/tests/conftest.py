import pytest

from twopl import parse_schedule

S1 = "r1(y) r2(z) w2(z) r1(x) w2(y) r2(x) w2(x) r1(z)"
S2 = "r4(x) w3(x) r4(z) w4(y) r2(x) r1(x) w2(z) w3(y) r2(y) w1(x) w1(y)"

# published linearization of S2, one inner list per unordered group
S2_PAPER_GROUPS = [
    ["SL4^x[1]"],
    ["SL4^z[3]", "XL4^y[4]", "t1"],
    ["SU4^x[1]"],
    ["XL3^x[2]"],
    ["t2"],
    ["t3"],
    ["SU4^z[3]", "t4"],
    ["XU4^y[4]", "XL2^z[7]"],
    ["XL3^y[8]"],
    ["XU3^x[2]"],
    ["SL2^x[5]"],
    ["t5", "SL1^x[6]"],
    ["t6"],
    ["t7"],
    ["t8"],
    ["XU3^y[8]"],
    ["SL2^y[9]"],
    ["SU2^x[5]", "t9", "XU2^z[7]"],
    ["XL1^x[10]", "SU2^y[9]"],
    ["XL1^y[11]", "t10"],
    ["t11", "XU1^x[10]"],
    ["XU1^y[11]"],
]


@pytest.fixture
def s1():
    return parse_schedule(S1)


@pytest.fixture
def s2():
    return parse_schedule(S2)


ACCEPTANCE_RESULTS: list[tuple[int, str, bool]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}")
