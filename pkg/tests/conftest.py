from collections import OrderedDict

import pytest

# criterion id -> list of (row label, ok, detail)
_ROWS: "OrderedDict[str, list]" = OrderedDict()


@pytest.fixture
def report():
    """Record one checked row of an acceptance criterion and return whether it passed."""

    def record(criterion: str, row: str, ok: bool, detail: str = "") -> bool:
        _ROWS.setdefault(criterion, []).append((row, bool(ok), detail))
        print(f"{'PASS' if ok else 'FAIL'}  {criterion}  {row}  {detail}")
        return bool(ok)

    return record


def _order(cid: str):
    head = cid.split()[0].lstrip("C").rstrip("+")
    return (int(head) if head.isdigit() else 99, cid)


def pytest_terminal_summary(terminalreporter):
    if not _ROWS:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_ROWS, key=_order):
        rows = _ROWS[cid]
        bad = [r for r in rows if not r[1]]
        status = "PASS" if not bad else "FAIL"
        terminalreporter.write_line(f"{status}  {cid}  ({len(rows) - len(bad)}/{len(rows)} rows)")
        for row, ok, detail in rows:
            if not ok:
                terminalreporter.write_line(f"        failed: {row}  {detail}")
