import pytest
from hypothesis import settings

settings.register_profile("repo", deadline=None, print_blob=True)
settings.load_profile("repo")

ACCEPTANCE: dict = {}


@pytest.fixture
def record():
    def _record(number: int, passed: bool, text: str) -> None:
        ACCEPTANCE[number] = (passed, text)
        print(f"criterion {number}: {'PASS' if passed else 'FAIL'} {text}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        passed, text = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if passed else 'FAIL'}  {text}")
