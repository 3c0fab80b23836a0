"""Word equations to EDT0L descriptions."""

from ._wordeq import ParseError, check, enumerate, export_json, oracle, solve, trace

__all__ = ["ParseError", "check", "enumerate", "export_json", "oracle", "solve", "trace"]
