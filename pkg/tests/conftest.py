import pytest

from gradedlie.catalog import build_model

# test_acceptance fills this: criterion number -> (passed, label, detail)
ACCEPTANCE: dict = {}


@pytest.fixture(scope="session")
def model():
    cache = {}

    def get(text):
        if text not in cache:
            cache[text] = build_model(text)
        return cache[text]

    return get


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, label, detail = ACCEPTANCE[n]
        line = f"criterion {n} {'PASS' if ok else 'FAIL'}: {label}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
