from math import factorial

import pytest

from markedgroups.parsing import parse_group

# (expression, order or None if infinite, nilpotency class or None if not nilpotent)
# class 0 = trivial, class 1 = abelian and nontrivial
CATALOG_TRUTH = [
    ("Triv 1", 1, 0),
    ("Triv 2", 1, 0),
    ("Z", None, 1),
    ("Z^2", None, 1),
    ("Z^3", None, 1),
    ("Z/2", 2, 1),
    ("Z/3", 3, 1),
    ("Z/5", 5, 1),
    ("Z/6", 6, 1),
    ("F 2", None, None),
    ("F 3", None, None),
    ("BS(1,2)", None, None),
    ("BS(1,-1)", None, None),
    ("D 3", 6, None),
    ("D 4", 8, 2),
    ("D 5", 10, None),
    ("D 6", 12, None),
    ("D 8", 16, 3),
    ("S 2", 2, 1),
    ("S 3", factorial(3), None),
    ("S 4", factorial(4), None),
    ("A 3", 3, 1),
    ("A 4", 12, None),
    ("A 5", 60, None),
    ("Heis", None, 2),
    ("Lamp", None, None),
    ("direct(Z/2, Z/3)", 6, 1),
    ("direct(S 3, Z/2)", 12, None),
    ("direct(Heis, Z)", None, 2),
    ("free(Z/2, Z/2)", None, None),
    ("mark(Z; a, a^3)", None, 1),
]

LAWFUL_EXPRESSIONS = [expr for expr, _, _ in CATALOG_TRUTH] + ["limit(cyclicseq)", "limit(markseq)"]


@pytest.fixture(scope="session")
def groups():
    cache = {}

    def get(expr):
        if expr not in cache:
            cache[expr] = parse_group(expr)
        return cache[expr]

    return get


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
