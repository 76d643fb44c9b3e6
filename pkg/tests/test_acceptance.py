"""Acceptance criteria 1 to 11, one test each.

Every test records a ``PASS``/``FAIL`` line that the terminal summary
prints (see ``conftest.py``).  Running this file directly prints the same
lines without pytest.
"""
from __future__ import annotations

import subprocess
import sys

import pytest

from gmk import reproduce as rp

LINES: dict[int, str] = {}


def _record(n: int, title: str, ok: bool, failing: list[str]) -> None:
    tail = f"  [{'; '.join(failing)}]" if failing else ""
    LINES[n] = f"{'PASS' if ok else 'FAIL'} {n:2d} {title}{tail}"


@pytest.mark.parametrize("n", sorted(rp.CRITERIA))
def test_criterion(n):
    res = rp.run_criterion(n)
    failing = [f"{c.name}: {c.detail}" if c.detail else c.name for c in res.checks if not c.ok]
    _record(n, res.title, res.passed, failing)
    assert res.passed, "\n".join(failing)


def _reproduce_log() -> bytes:
    proc = subprocess.run([sys.executable, "-m", "gmk", "reproduce"], capture_output=True, timeout=600)
    assert proc.returncode in (0, 1), proc.stderr.decode()
    return proc.stdout


def test_criterion_11_determinism():
    first, second = _reproduce_log(), _reproduce_log()
    same = first == second and first != b""
    _record(11, "determinism: two reproduce runs give identical logs", same, [] if same else ["logs differ"])
    assert same


if __name__ == "__main__":
    results = rp.run(range(1, 12))
    for r in results:
        print(r.lines()[0])
    sys.exit(0 if all(r.passed for r in results) else 1)
