import json
import time
from pathlib import Path

import pytest

from psldesign.cli import main as cli_main

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


class ScenarioRunner:
    """Runs bundled scenarios through the command line exactly once per
    session (twice for the reproducibility check) and caches the artifact
    directories plus wall time of the first run."""

    def __init__(self, root: Path):
        self.root = root
        self._cache = {}

    def run(self, name: str):
        if name in self._cache:
            return self._cache[name]
        scenario = SCENARIO_DIR / f"{name}.json"
        assert scenario.exists(), f"missing bundled scenario {name}"
        mode = json.loads(scenario.read_text()).get("mode", "design")
        command = "gen-set" if mode == "set" else "run"
        out1 = self.root / name / "run1"
        out2 = self.root / name / "run2"
        started = time.perf_counter()
        code1 = cli_main([command, str(scenario), "--out-dir", str(out1)])
        seconds = time.perf_counter() - started
        code2 = cli_main([command, str(scenario), "--out-dir", str(out2)])
        assert code1 == 0 and code2 == 0, f"scenario {name} failed"
        record = {"out1": out1, "out2": out2, "seconds": seconds,
                  "metrics": parse_report(out1 / ("set_metrics.txt" if command ==
                                                  "gen-set" else "metrics.txt"))}
        self._cache[name] = record
        return record


def parse_report(path: Path) -> dict:
    """Flatten the indented key: value report into dotted keys."""
    flat = {}
    stack = []
    for line in path.read_text().splitlines():
        stripped = line.lstrip()
        depth = (len(line) - len(stripped)) // 2
        key, _, value = stripped.partition(":")
        value = value.strip()
        stack = stack[:depth]
        if value == "":
            stack.append(key)
            continue
        flat[".".join(stack + [key])] = value
    return flat


def as_float(report: dict, key: str) -> float:
    return float(report[key])


@pytest.fixture(scope="session")
def scenario_runner(tmp_path_factory):
    return ScenarioRunner(tmp_path_factory.mktemp("scenarios"))
