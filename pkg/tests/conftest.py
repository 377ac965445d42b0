from collections import defaultdict

import pytest

TITLES = {
    1: "braid relations on H(n,k,alpha), n <= 6",
    2: "Gram unitarity incl. mixed signature",
    3: "Squier unitarity and f-basis form, n <= 7",
    4: "Burau / fusion isomorphism, n in {3,4,5}",
    5: "exterior powers, n = 5",
    6: "Jucys-Murphy diagonality and eigenvalues",
    7: "half-twist identities on H(3,0,alpha)",
    8: "oracle dimensions and traces",
    9: "definiteness window of H(3,0,alpha)",
    10: "singular qubit model",
    11: "budget-24 weave search vs reference errors",
    12: "density diagnostics",
}

_results: dict[int, list[tuple[str, bool, str]]] = defaultdict(list)


@pytest.fixture
def record():
    """``record(criterion, part, passed, detail)`` feeds the acceptance summary."""

    def _record(criterion: int, part: str, passed: bool, detail: str = "") -> bool:
        _results[criterion].append((part, bool(passed), detail))
        return bool(passed)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for c in sorted(TITLES):
        parts = _results.get(c)
        if not parts:
            tr.write_line(f"criterion {c:2d}: NOT RUN  {TITLES[c]}")
            continue
        ok = all(p for _, p, _ in parts)
        tr.write_line(f"criterion {c:2d}: {'PASS' if ok else 'FAIL'}  {TITLES[c]}"
                      f"  ({sum(p for _, p, _ in parts)}/{len(parts)} parts)")
        for part, p, detail in parts:
            if not p:
                tr.write_line(f"    failing part: {part}  {detail}")
