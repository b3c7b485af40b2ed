import sys

import pytest

from hotg.driver import run_check
from hotg.kernel.signature import Signature
from hotg.stdlib import all_paths, stdlib_dir


@pytest.fixture(scope="session")
def stdlib_report():
    return run_check(all_paths(), stdlib_dir(), trust=True)


@pytest.fixture(scope="session")
def stdlib_sig(stdlib_report):
    assert stdlib_report.ok, stdlib_report.to_text()
    sig = Signature(allow_trusted=True)
    for art in stdlib_report.articles:
        sig = sig.add_checked(art.entries)
    return sig


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    verdicts = getattr(acceptance, "VERDICTS", None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(verdicts):
        terminalreporter.write_line(verdicts[n])
