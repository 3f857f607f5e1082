"""Collects one verdict line per acceptance criterion for the run summary."""

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> str:
    line = f"ACCEPTANCE {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    RESULTS[n] = line
    print(line)
    return line
