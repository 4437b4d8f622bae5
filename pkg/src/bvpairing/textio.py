"""Plain-text problem files.

A block starts with ``func <name> <a> <b>`` or ``field <name> <a> <b>`` and
lists its pieces in order as ``P x_lo x_hi v_at_lo v_at_hi``. Rationals are
written ``p/q`` or ``p``. ``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .bvfunc import Representative
from .core import Domain, PiecewiseAffine, format_rational

KINDS = ("func", "field")


class ProblemSyntaxError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column


@dataclass
class Problem:
    functions: dict[str, PiecewiseAffine] = field(default_factory=dict)
    fields: dict[str, PiecewiseAffine] = field(default_factory=dict)
    order: list[tuple[str, str]] = field(default_factory=list)  # (kind, name) in file order
    trailer: list[str] = field(default_factory=list)

    def get(self, name: str) -> PiecewiseAffine:
        if name in self.functions:
            return self.functions[name]
        if name in self.fields:
            return self.fields[name]
        raise KeyError(f"no function or field named {name!r}")

    @property
    def domains(self) -> dict[str, Domain]:
        return {n: f.domain for n, f in {**self.functions, **self.fields}.items()}


def serialize_function(u: PiecewiseAffine, name: str, kind: str = "func") -> str:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    lines = [f"{kind} {name} {format_rational(u.domain.a)} {format_rational(u.domain.b)}"]
    for l, h, vl, vh in u.pieces():
        lines.append(
            f"P {format_rational(l)} {format_rational(h)} {format_rational(vl)} {format_rational(vh)}"
        )
    return "\n".join(lines)


def serialize_problem(problem: Problem) -> str:
    blocks = []
    for kind, name in problem.order:
        src = problem.functions if kind == "func" else problem.fields
        blocks.append(serialize_function(src[name], name, kind))
    return "\n".join(blocks + problem.trailer) + "\n"


def _column(raw: str, index: int) -> int:
    # 1-based column of the index-th whitespace separated token
    pos = 0
    for k, tok in enumerate(raw.split()):
        pos = raw.index(tok, pos)
        if k == index:
            return pos + 1
        pos += len(tok)
    return 1


def _rational(tok: str, raw: str, idx: int, lineno: int) -> Fraction:
    try:
        if "." in tok or "e" in tok.lower():
            raise ValueError
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ProblemSyntaxError(f"invalid rational {tok!r}", lineno, _column(raw, idx)) from None


def parse_problem_text(text: str) -> Problem:
    problem = Problem()
    current = None  # [kind, name, a, b, pieces, header_line]

    def close(end_line: int):
        if current is None:
            return
        kind, name, a, b, pieces, hline = current
        if not pieces:
            raise ProblemSyntaxError(f"{kind} {name!r} has no pieces", hline)
        if pieces[-1][1] != b:
            raise ProblemSyntaxError(
                f"{kind} {name!r} ends at {format_rational(pieces[-1][1])}, not at {format_rational(b)}",
                end_line,
            )
        fn = PiecewiseAffine(
            Domain(a, b), tuple(p[0] for p in pieces) + (b,),
            tuple(p[2] for p in pieces), tuple(p[3] for p in pieces),
        )
        target = problem.functions if kind == "func" else problem.fields
        target[name] = fn
        problem.order.append((kind, name))

    for lineno, raw_line in enumerate(text.splitlines(), 1):
        raw = raw_line.split("#", 1)[0]
        tok = raw.split()
        if not tok:
            continue
        head = tok[0]
        if head in KINDS:
            close(lineno)
            if len(tok) != 4:
                raise ProblemSyntaxError(f"expected '{head} <name> <a> <b>'", lineno)
            name = tok[1]
            if name in problem.functions or name in problem.fields:
                raise ProblemSyntaxError(f"duplicate name {name!r}", lineno, _column(raw, 1))
            a = _rational(tok[2], raw, 2, lineno)
            b = _rational(tok[3], raw, 3, lineno)
            if not a < b:
                raise ProblemSyntaxError("empty interval: need a < b", lineno, _column(raw, 3))
            current = [head, name, a, b, [], lineno]
        elif head == "P":
            if current is None:
                raise ProblemSyntaxError("piece before any func/field header", lineno)
            if len(tok) != 5:
                raise ProblemSyntaxError("expected 'P x_lo x_hi v_at_lo v_at_hi'", lineno)
            lo, hi, vl, vh = (_rational(tok[k], raw, k, lineno) for k in range(1, 5))
            pieces = current[4]
            expected = pieces[-1][1] if pieces else current[2]
            if lo != expected:
                raise ProblemSyntaxError(
                    f"non-contiguous: piece starts at {format_rational(lo)}, "
                    f"expected {format_rational(expected)}",
                    lineno, _column(raw, 1),
                )
            if not lo < hi:
                raise ProblemSyntaxError("inconsistent piece: need x_lo < x_hi", lineno, _column(raw, 2))
            if hi > current[3]:
                raise ProblemSyntaxError(
                    f"piece ends at {format_rational(hi)} beyond b = {format_rational(current[3])}",
                    lineno, _column(raw, 2),
                )
            pieces.append((lo, hi, vl, vh))
        elif head == "verified" or head == "unverified":
            close(lineno)
            current = None
            problem.trailer.append(raw.strip())
        else:
            raise ProblemSyntaxError(f"unknown record {head!r}", lineno)
    close(len(text.splitlines()) + 1)
    return problem


def parse_problem(path: str | Path) -> Problem:
    return parse_problem_text(Path(path).read_text())


def serialize_certificate(cert, name: str = "sigma") -> str:
    status = "verified" if cert.verified else "unverified"
    kind = "dirichlet" if cert.kind.startswith("dirichlet") else "local"
    rep = cert.rep.value if isinstance(cert.rep, Representative) else str(cert.rep)
    return serialize_function(cert.sigma, name, "field") + f"\n{status} {kind} {rep}"
