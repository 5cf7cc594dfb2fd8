"""Plain-text matrix files.

Line 1 holds `m n`; the next m lines hold n whitespace-separated entries.
A real entry is a decimal literal (`1`, `-0.5`, `2e-3`); a complex entry is
written `(re,im)` with no internal whitespace.  `#` starts a comment that runs
to end of line; blank lines are ignored.  Files are UTF-8 with LF or CRLF
endings.  Writing uses repr round-tripping, so write -> parse is entrywise
exact.
"""

from __future__ import annotations

import numpy as np

from .errors import ParseError
from .linalg import as_matrix

_COMPLEX_PREFIX = "("


def _parse_entry(token: str, lineno: int) -> complex:
    if token.startswith(_COMPLEX_PREFIX):
        if not token.endswith(")") or token.count(",") != 1:
            raise ParseError(f"line {lineno}: malformed complex entry {token!r}")
        re_s, im_s = token[1:-1].split(",")
        try:
            return complex(float(re_s), float(im_s))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: malformed complex entry {token!r}") from exc
    try:
        return complex(float(token), 0.0)
    except ValueError as exc:
        raise ParseError(f"line {lineno}: malformed entry {token!r}") from exc


def _content_lines(text: str):
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip().rstrip("\r")
        # \r can survive between the content and an inline comment on CRLF files
        line = line.replace("\r", " ").strip()
        if line:
            yield lineno, line


def parse_matrix(text: str) -> np.ndarray:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty matrix file") from None
    parts = header.split()
    if len(parts) != 2:
        raise ParseError(f"line {lineno}: header must be 'm n', got {header!r}")
    try:
        m, n = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise ParseError(f"line {lineno}: header must be 'm n', got {header!r}") from exc
    if m <= 0 or n <= 0:
        raise ParseError(f"line {lineno}: matrix dimensions must be positive")

    out = np.empty((m, n), dtype=np.complex128)
    row = 0
    for lineno, line in lines:
        if row >= m:
            raise ParseError(f"line {lineno}: more than {m} rows of data")
        tokens = line.split()
        if len(tokens) != n:
            raise ParseError(f"line {lineno}: expected {n} entries, got {len(tokens)}")
        for j, tok in enumerate(tokens):
            out[row, j] = _parse_entry(tok, lineno)
        row += 1
    if row != m:
        raise ParseError(f"expected {m} rows of data, got {row}")
    if not np.all(np.isfinite(out)):
        raise ParseError("matrix entries must be finite")
    return out


def _format_real(x) -> str:
    x = float(x)
    if x == int(x) and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def format_matrix(a) -> str:
    a = as_matrix(a)
    m, n = a.shape
    lines = [f"{m} {n}"]
    if np.all(a.imag == 0.0):
        for i in range(m):
            lines.append(" ".join(_format_real(x) for x in a[i].real))
    else:
        for i in range(m):
            lines.append(
                " ".join(f"({float(z.real)!r},{float(z.imag)!r})" for z in a[i])
            )
    return "\n".join(lines) + "\n"


def read_matrix(path) -> np.ndarray:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def write_matrix(path, a) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_matrix(a))
