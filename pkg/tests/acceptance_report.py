"""Collects one pass/fail line per acceptance criterion."""

_RESULTS = {}


def record(number: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {detail}"
    _RESULTS[number] = line
    print(line)


def lines():
    return [_RESULTS[k] for k in sorted(_RESULTS)]
