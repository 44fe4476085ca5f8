"""Line-oriented reader shared by the PDA and GPDA file formats."""

import re

from pdacache.errors import HeaderMismatch, ParseError


def _lines(data):
    if isinstance(data, (bytes, bytearray, memoryview)):
        try:
            data = bytes(data).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8 ({exc.reason})") from None
    for lineno, line in enumerate(data.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield lineno, line.rstrip()


def read_table(data, magic, keys, parse_token):
    """Parse ``magic`` / ``k=v`` header / body rows.

    Returns ``(header, rows)`` where ``header`` maps each key to an int and
    ``rows`` is a list of tuples of parsed tokens. The first key is the
    column count and the second the row count.
    """
    lines = _lines(data)
    first = next(lines, None)
    if first is None:
        raise ParseError("empty input")
    lineno, line = first
    if line.strip() != magic:
        raise ParseError(f"expected {magic!r}, got {line.strip()!r}", lineno, 1)

    second = next(lines, None)
    if second is None:
        raise ParseError("missing parameter line")
    lineno, line = second
    pattern = " ".join(rf"{k}=(\d+)" for k in keys)
    m = re.fullmatch(pattern, line.strip())
    if m is None:
        want = " ".join(f"{k}=<int>" for k in keys)
        raise ParseError(f"expected parameter line {want!r}, got {line.strip()!r}", lineno, 1)
    header = {k: int(v) for k, v in zip(keys, m.groups())}
    ncols, nrows = header[keys[0]], header[keys[1]]

    rows = []
    for lineno, line in lines:
        row_index = len(rows)
        if row_index >= nrows:
            raise HeaderMismatch(f"more than {keys[1]}={nrows} body rows", lineno)
        tokens = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        if len(tokens) != ncols:
            raise ParseError(
                f"row {row_index} has {len(tokens)} entries, expected {keys[0]}={ncols}",
                lineno,
            )
        parsed = []
        for col, tok in tokens:
            try:
                parsed.append(parse_token(tok, header))
            except HeaderMismatch as exc:
                raise HeaderMismatch(str(exc), lineno, col) from None
            except ValueError as exc:
                raise ParseError(str(exc), lineno, col) from None
        rows.append(tuple(parsed))
    if len(rows) != nrows:
        raise HeaderMismatch(f"{keys[1]}={nrows} declared but {len(rows)} body rows found")
    return header, rows


def write_table(magic, header, rows, format_token):
    out = [magic, " ".join(f"{k}={v}" for k, v in header.items())]
    out.extend(" ".join(format_token(x) for x in row) for row in rows)
    return ("\n".join(out) + "\n").encode("utf-8")
