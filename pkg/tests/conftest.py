import pytest

from skelette.io import load_fan

FAN_NAMES = ("p1", "p2", "p1xp1", "stacky")


@pytest.fixture(scope="session")
def fans():
    return {name: load_fan(name + ".json") for name in FAN_NAMES}


@pytest.fixture(scope="session")
def p1(fans):
    return fans["p1"]


@pytest.fixture(scope="session")
def p2(fans):
    return fans["p2"]


@pytest.fixture(scope="session")
def p1xp1(fans):
    return fans["p1xp1"]


@pytest.fixture(scope="session")
def stacky(fans):
    return fans["stacky"]


_ACCEPTANCE_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = []


@pytest.fixture
def acceptance(request):
    """Record one pass/fail line for an acceptance criterion."""
    lines = request.config.stash[_ACCEPTANCE_KEY]

    def record(number, title, ok, detail=""):
        line = "%s criterion %2d: %s%s" % ("PASS" if ok else "FAIL", number, title,
                                            " (%s)" % detail if detail else "")
        lines.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_ACCEPTANCE_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
