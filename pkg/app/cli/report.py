import json
import logging
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Dict, List

import pandas as pd


logger = logging.getLogger(__name__)

OK = "ok"
FAIL = "fail"


@dataclass
class Report:
    """
    What a command produced: structured results for `--json`, text blocks
    for the human rendering and the verdict that decides the exit code.
    """

    command: str
    n: int = None
    results: Dict[str, Any] = field(default_factory=dict)
    timings_ms: Dict[str, float] = field(default_factory=dict)
    verdict: str = OK
    lines: List[str] = field(default_factory=list)
    record_timings: bool = False

    def fail(self, message: str) -> None:
        self.verdict = FAIL
        self.lines.append(f"FAIL: {message}")

    def say(self, text: str = "") -> None:
        self.lines.append(text)

    def table(self, frame: pd.DataFrame) -> None:
        self.lines.append(frame.to_string() if not frame.empty else "(empty)")

    @contextmanager
    def timed(self, key: str):
        start = time.perf_counter()
        yield
        if self.record_timings:
            self.timings_ms[key] = round((time.perf_counter() - start) * 1000, 3)

    @property
    def exit_code(self) -> int:
        return 0 if self.verdict == OK else 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "n": self.n,
            "results": self.results,
            "timings_ms": self.timings_ms,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def to_text(self) -> str:
        out = list(self.lines)
        if self.record_timings and self.timings_ms:
            out.append("")
            out.append("timings (ms):")
            out.extend(f"  {k}: {v}" for k, v in sorted(self.timings_ms.items()))
        out.append(f"verdict: {self.verdict}")
        return "\n".join(out)

    def render(self, as_json: bool) -> str:
        return self.to_json() if as_json else self.to_text()
