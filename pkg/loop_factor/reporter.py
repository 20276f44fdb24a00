"""
Report rendering for loop-factor documents.

Every command produces a JSON-ready document; the reporters render it as
JSON (the canonical, byte-stable form), a colored terminal summary or
Markdown.
"""

import json
import sys
from typing import Any, Dict, List, TextIO, Union

Document = Dict[str, Any]


# Terminal colors
class Colors:
    BLUE = "\033[94m"
    CYAN = "\033[96m"
    GREEN = "\033[92m"
    YELLOW = "\033[93m"
    RED = "\033[91m"
    ENDC = "\033[0m"
    BOLD = "\033[1m"
    DIM = "\033[2m"


def _supports_color() -> bool:
    return hasattr(sys.stdout, "isatty") and sys.stdout.isatty()


def _color(text: str, color: str) -> str:
    if _supports_color():
        return f"{color}{text}{Colors.ENDC}"
    return text


def _mark(flag: Any) -> str:
    if flag is None:
        return _color("-", Colors.DIM)
    return _color("✓", Colors.GREEN) if flag else _color("✗", Colors.RED)


def document_kind(doc: Document) -> str:
    """check, result, factors, loop or other."""
    if "member" in doc:
        return "check"
    if "residual" in doc:
        return "result"
    if "factors" in doc:
        return "factors"
    if "entries" in doc:
        return "loop"
    return "other"


def _header(doc: Document) -> str:
    twist = doc.get("twist")
    flavor = f", twist {twist['flavor']}" if twist else ""
    return f"{doc.get('group', '?')} (size {doc.get('n', '?')}{flavor})"


def _factor_label(factor: Document) -> str:
    if factor.get("variant") == "q":
        mark = "^-1" if factor.get("inverted") else ""
        return f"q[{_factor_label(factor['base'])}]{mark}"
    dims = ", ".join(f"dim {len(space)}" for space in factor.get("data", []))
    return f"{factor['variant']}({factor['alpha']}; {dims})"


class TerminalReporter:
    """Readable summaries with colors when stdout is a terminal."""

    def __init__(self, verbose: bool = True):
        self.verbose = verbose

    def _report_check(self, doc: Document, output: TextIO) -> None:
        print(f"  Member:     {_mark(doc['member'])}", file=output)
        if doc.get("reason"):
            print(f"    {_color(doc['reason'], Colors.YELLOW)}", file=output)
        if doc.get("multiplier"):
            print(f"  Multiplier: {doc['multiplier']}", file=output)
        print(f"  Normalized: {_mark(doc['normalized'])}", file=output)
        print(f"  Real:       {_mark(doc['real'])}", file=output)
        print(f"  Twisted:    {_mark(doc['twisted'])}", file=output)
        if doc["poles"]:
            print(file=output)
            print(_color("  Poles:", Colors.BOLD), file=output)
            for p in doc["poles"]:
                print(f"    {p['pole']}: order {p['k']}, leading rank {p['rank']}", file=output)

    def _report_factors(self, doc: Document, output: TextIO) -> None:
        factors = doc["factors"]
        print(_color(f"  Factors ({len(factors)}):", Colors.BOLD), file=output)
        for index, factor in enumerate(factors, 1):
            print(f"    {index}. {_factor_label(factor)}", file=output)
        steps: List[Document] = doc.get("steps", [])
        if steps and self.verbose:
            print(file=output)
            print(_color("  Reduction steps:", Colors.BOLD), file=output)
            for step in steps:
                trend = _color("↓", Colors.GREEN) if step["decreased"] else _color("!", Colors.RED)
                print(
                    f"    {trend} {step['pole']} [{step['branch']}] "
                    f"{tuple(step['before'])} -> {tuple(step['after'])}",
                    file=output,
                )

    def report(self, doc: Document, output: TextIO = sys.stdout) -> None:
        kind = document_kind(doc)
        print(file=output)
        print(_color(f"{'=' * 60}", Colors.DIM), file=output)
        title = f" {kind.title()} report: {_header(doc)}" if "group" in doc else f" {kind.title()} report"
        print(_color(title, Colors.BOLD), file=output)
        print(_color(f"{'=' * 60}", Colors.DIM), file=output)
        print(file=output)

        if kind == "check":
            self._report_check(doc, output)
        elif kind in ("result", "factors"):
            self._report_factors(doc, output)
        elif kind == "loop":
            for i, row in enumerate(doc["entries"]):
                poles = sorted({d["root"] for e in row for d in e["den"]})
                print(f"  row {i}: poles {', '.join(poles) or 'none'}", file=output)
        else:
            for key, value in doc.items():
                print(f"  {key}: {json.dumps(value)}", file=output)
        print(file=output)


class JsonReporter:
    """Canonical JSON; identical inputs give byte-identical output."""

    def __init__(self, indent: int = 2):
        self.indent = indent

    def report(self, doc: Document, output: TextIO = sys.stdout) -> None:
        json.dump(doc, output, indent=self.indent)
        print(file=output)


class MarkdownReporter:
    def report(self, doc: Document, output: TextIO = sys.stdout) -> None:
        kind = document_kind(doc)
        print(f"# {kind.title()} report", file=output)
        print(file=output)
        if "group" in doc:
            print(f"- **Group:** {_header(doc)}", file=output)

        if kind == "check":
            for key in ("member", "normalized", "real", "twisted"):
                print(f"- **{key.title()}:** {doc[key]}", file=output)
            if doc.get("reason"):
                print(f"- **Reason:** {doc['reason']}", file=output)
            if doc["poles"]:
                print(file=output)
                print("| Pole | Order | Leading rank |", file=output)
                print("|------|-------|--------------|", file=output)
                for p in doc["poles"]:
                    print(f"| `{p['pole']}` | {p['k']} | {p['rank']} |", file=output)
        elif kind in ("result", "factors"):
            print(file=output)
            print("## Factors", file=output)
            print(file=output)
            for index, factor in enumerate(doc["factors"], 1):
                print(f"{index}. `{_factor_label(factor)}`", file=output)
            if doc.get("steps"):
                print(file=output)
                print("## Reduction steps", file=output)
                print(file=output)
                print("| Pole | Branch | Before | After |", file=output)
                print("|------|--------|--------|-------|", file=output)
                for step in doc["steps"]:
                    print(
                        f"| `{step['pole']}` | {step['branch']} | "
                        f"{tuple(step['before'])} | {tuple(step['after'])} |",
                        file=output,
                    )
        else:
            print(file=output)
            print("```json", file=output)
            print(json.dumps(doc, indent=2), file=output)
            print("```", file=output)
        print(file=output)


def get_reporter(
    format: str, verbose: bool = True
) -> Union[TerminalReporter, JsonReporter, MarkdownReporter]:
    """Get a reporter for the specified format."""

    reporters = {
        "terminal": TerminalReporter(verbose=verbose),
        "json": JsonReporter(),
        "markdown": MarkdownReporter(),
    }
    return reporters.get(format, JsonReporter())
