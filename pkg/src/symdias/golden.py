"""Reference values shipped as JSON, one file per reference table or matrix."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources

NAMES = ("example3", "submatrix4", "expansions", "degree5", "degree6", "x6", "x5y", "degree7")


def dumps(obj) -> str:
    """JSON with every innermost list of scalars kept on one line."""
    text = json.dumps(obj, indent=1)
    return re.sub(r"\[\s*([^\[\]{}]*?)\s*\]",
                  lambda m: "[" + ", ".join(x.strip() for x in m.group(1).split(",")) + "]"
                  if m.group(1).strip() else "[]", text)


@lru_cache(maxsize=None)
def load(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"no golden file {name!r}")
    text = resources.files("symdias").joinpath("golden", f"{name}.json").read_text()
    return json.loads(text)


@dataclass
class Comparison:
    """Accumulates named golden checks and renders a diff of the failures."""

    checks: list = field(default_factory=list)

    def check(self, name: str, expected, actual) -> bool:
        ok = expected == actual
        self.checks.append((name, ok, expected, actual))
        return ok

    def skip(self, name: str, reason: str):
        self.checks.append((name, None, reason, None))

    @property
    def ok(self) -> bool:
        return all(ok is not False for _, ok, _, _ in self.checks)

    def diff(self) -> str:
        lines = []
        for name, ok, expected, actual in self.checks:
            if ok is False:
                lines.append(f"--- golden {name}")
                lines.append(f"+++ computed {name}")
                lines.append(f"- {expected}")
                lines.append(f"+ {actual}")
        return "\n".join(lines)

    def summary(self) -> str:
        passed = sum(1 for c in self.checks if c[1] is True)
        failed = sum(1 for c in self.checks if c[1] is False)
        skipped = sum(1 for c in self.checks if c[1] is None)
        return f"golden: {passed} passed, {failed} failed, {skipped} skipped"
