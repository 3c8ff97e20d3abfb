import pytest

ACCEPTANCE_LINES: list[str] = []


def pytest_addoption(parser):
    parser.addoption("--stretch", action="store_true", default=False,
                     help="also run the hour-scale reproductions (q = 23, 25, 27)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--stretch"):
        return
    skip = pytest.mark.skip(reason="opt-in: pass --stretch")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def acceptance_line():
    """Record one summary line per acceptance criterion."""
    def record(text: str):
        ACCEPTANCE_LINES.append(text)
        print(text)
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
