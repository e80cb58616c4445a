"""Privacy-by-design advisor: annotate IoT data-flow diagrams with privacy patterns."""

import json
import os
from pathlib import Path

_bundled = Path(__file__).resolve().parent / "data"
if "PARROT_DATA_DIR" not in os.environ and (_bundled / "kb").is_dir():
    os.environ["PARROT_DATA_DIR"] = str(_bundled)

from . import _core  # noqa: E402


class ParrotError(Exception):
    """Engine error with a stable `code` (parse_error, schema_error, ...)."""

    def __init__(self, code, message, detail=None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.detail = detail or {}


_core._set_error_type(ParrotError)


class Advisor:
    def __init__(self, kb_dir="", rules=""):
        self._engine = _core.Engine(str(kb_dir), str(rules))

    def annotate(self, dfd):
        text = dfd if isinstance(dfd, str) else json.dumps(dfd)
        return json.loads(self._engine.annotate_json(text))

    def query(self, text):
        return json.loads(self._engine.query_json(text))

    def patterns(self):
        return json.loads(self._engine.patterns_json())

    def pattern(self, number):
        return json.loads(self._engine.pattern_json(int(number)))

    def cq_stats(self, corpus=""):
        return json.loads(self._engine.cq_stats_json(str(corpus)))


def lint(turtle, include_foreign=False):
    return json.loads(_core.lint_json(turtle, include_foreign))


__all__ = ["Advisor", "ParrotError", "lint"]
