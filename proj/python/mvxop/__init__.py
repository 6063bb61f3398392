"""Matrix-valued exceptional Laguerre polynomials: exact construction, identity checks and zeros."""

import json

from ._core import Model, cdh_check, format_rat, run

__all__ = ["Model", "cdh_check", "format_rat", "run", "run_json"]
__version__ = "0.1.0"


def run_json(*args):
    """Runs the command-line tool and returns (exit_code, parsed JSON report or None)."""
    code, out, _ = run([str(a) for a in args])
    return code, (json.loads(out) if out.strip().startswith("{") else None)
