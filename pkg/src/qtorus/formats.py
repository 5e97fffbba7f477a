"""Presentation file format.

::

    # Example: X4 fails to commute with X1, X2, X3
    [torus]
    n = 4
    mode = symbolic            # or: rational
    generators = q1 q2 q3      # symbolic mode only
    q 1 4 = q1                 # i < j, 1-indexed; omitted entries are 1
    q 2 4 = q2
    q 3 4 = q3

    [sigma]                    # optional: sigma(X_i) = p_i X_i
    generators = p1 p2 p3 p4   # optional fresh labels, disjoint from the torus's
    p 1 = p1                   # omitted p_i are 1

In symbolic mode a ``[sigma]`` block without a ``generators`` line is written
over the torus's own labels.  In rational mode the basis is the sorted set of
primes occurring anywhere in the file, shared by ``q`` and ``sigma``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import scalars
from .algebra import QTorusPresentation, ScalarAutomorphismSpec, merge_bases
from .errors import ParseError, QTorusError
from .scalars import GeneratorBasis

_SECTION_RE = re.compile(r"\[\s*(\w+)\s*\]")
_KEY_RE = re.compile(r"(\w+)\s*=\s*(.*)")
_Q_RE = re.compile(r"q\s+(\S+)\s+(\S+)\s*=\s*(.*)")
_P_RE = re.compile(r"p\s+(\S+)\s*=\s*(.*)")


@dataclass(frozen=True)
class PresentationFile:
    torus: QTorusPresentation
    sigma: ScalarAutomorphismSpec | None = None


@dataclass
class _Line:
    number: int
    text: str  # comment stripped
    indent: int


def _lines(text: str):
    for k, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        stripped = body.lstrip()
        if stripped:
            yield _Line(k, stripped, len(body) - len(stripped))


def _index(tok: str, line: _Line, col: int, n: int | None, what: str) -> int:
    if not re.fullmatch(r"[+-]?\d+", tok):
        raise ParseError(f"{what} index {tok!r} is not an integer", line.number, col)
    i = int(tok)
    if n is not None and not 1 <= i <= n:
        raise ParseError(f"{what} index {i} is outside 1..{n}", line.number, col)
    return i


def _with_location(exc: QTorusError, line: _Line, col: int) -> QTorusError:
    if getattr(exc, "line", None) is None:
        exc.line, exc.column = line.number, col
        exc.args = (f"{exc.args[0] if exc.args else ''} (line {line.number}, column {col})",)
    return exc


def parse_presentation(text: str) -> PresentationFile:
    section = None
    header: dict[str, tuple[str, _Line, int]] = {}
    sigma_header: dict[str, tuple[str, _Line, int]] = {}
    q_raw: dict[tuple[int, int], tuple[str, _Line, int]] = {}
    p_raw: dict[int, tuple[str, _Line, int]] = {}
    seen_sections: set[str] = set()
    n: int | None = None

    for line in _lines(text):
        col0 = line.indent + 1
        sec = _SECTION_RE.fullmatch(line.text)
        if sec:
            section = sec.group(1)
            if section not in ("torus", "sigma"):
                raise ParseError(f"unknown section [{section}]; expected [torus] or [sigma]", line.number, col0)
            if section in seen_sections:
                raise ParseError(f"section [{section}] appears twice", line.number, col0)
            if section == "sigma" and "torus" not in seen_sections:
                raise ParseError("[sigma] must come after [torus]", line.number, col0)
            seen_sections.add(section)
            continue
        if section is None:
            raise ParseError("content before the [torus] header", line.number, col0)
        if section == "torus":
            m = _Q_RE.fullmatch(line.text)
            if m:
                if n is None:
                    raise ParseError("'n = ...' must precede the q entries", line.number, col0)
                i = _index(m.group(1), line, col0 + m.start(1), n, "row")
                j = _index(m.group(2), line, col0 + m.start(2), n, "column")
                if i >= j:
                    raise ParseError(f"entry q {i} {j} is not above the diagonal; write q {j} {i} with the inverse", line.number, col0)
                if (i, j) in q_raw:
                    raise ParseError(f"entry q {i} {j} is given twice", line.number, col0)
                q_raw[(i, j)] = (m.group(3), line, col0 + m.start(3))
                continue
            target = header
        else:
            m = _P_RE.fullmatch(line.text)
            if m:
                i = _index(m.group(1), line, col0 + m.start(1), n, "sigma")
                if i in p_raw:
                    raise ParseError(f"p {i} is given twice", line.number, col0)
                p_raw[i] = (m.group(2), line, col0 + m.start(2))
                continue
            target = sigma_header
        kv = _KEY_RE.fullmatch(line.text)
        if not kv:
            raise ParseError(f"cannot read {line.text!r}", line.number, col0)
        key = kv.group(1)
        allowed = ("n", "mode", "generators") if section == "torus" else ("generators",)
        if key not in allowed:
            raise ParseError(f"unknown key {key!r} in [{section}]", line.number, col0)
        if key in target:
            raise ParseError(f"key {key!r} is given twice", line.number, col0)
        target[key] = (kv.group(2).strip(), line, col0 + kv.start(2))
        if key == "n":
            val, _, c = target[key]
            if not re.fullmatch(r"\d+", val) or int(val) < 1:
                raise ParseError(f"n must be a positive integer, got {val!r}", line.number, c)
            n = int(val)

    if "torus" not in seen_sections:
        raise ParseError("missing [torus] section", None, None)
    if n is None:
        raise ParseError("missing 'n = ...' in [torus]", None, None)
    mode_val, mode_line, mode_col = header.get("mode", (scalars.SYMBOLIC, None, None))
    if mode_val not in (scalars.SYMBOLIC, scalars.RATIONAL):
        raise ParseError(f"mode must be symbolic or rational, got {mode_val!r}", mode_line and mode_line.number, mode_col)

    if mode_val == scalars.RATIONAL:
        for key, hdr in (("generators", header), ("generators", sigma_header)):
            if key in hdr:
                _, ln, c = hdr[key]
                raise ParseError("'generators' is only used in symbolic mode", ln.number, c)
        primes: set[int] = set()
        for text_, ln, c in list(q_raw.values()) + list(p_raw.values()):
            try:
                primes |= scalars.scalar_primes(text_, ln.number, c - 1)
            except QTorusError as exc:
                raise _with_location(exc, ln, c) from None
        basis = GeneratorBasis.rational(sorted(primes))
        sigma_basis = basis
    else:
        labels = header.get("generators", ("", None, None))[0].split()
        try:
            basis = GeneratorBasis.symbolic(labels)
        except QTorusError as exc:
            _, ln, c = header["generators"]
            raise _with_location(exc, ln, c) from None
        except ValueError as exc:
            _, ln, c = header["generators"]
            raise ParseError(str(exc), ln.number, c) from None
        sigma_basis = basis
        if "generators" in sigma_header:
            text_, ln, c = sigma_header["generators"]
            try:
                sigma_basis = GeneratorBasis.symbolic(text_.split())
                merge_bases(basis, sigma_basis)
            except QTorusError as exc:
                raise _with_location(exc, ln, c) from None
            except ValueError as exc:
                raise ParseError(str(exc), ln.number, c) from None

    def parse(item, b):
        text_, ln, c = item
        try:
            return scalars.parse_scalar(text_, b, ln.number, c - 1)
        except QTorusError as exc:
            raise _with_location(exc, ln, c) from None

    entries = {(i - 1, j - 1): parse(item, basis) for (i, j), item in sorted(q_raw.items())}
    torus = QTorusPresentation.from_upper(n, basis, entries)
    sigma = None
    if "sigma" in seen_sections:
        p = [sigma_basis.zero() for _ in range(n)]
        for i, item in sorted(p_raw.items()):
            p[i - 1] = parse(item, sigma_basis)
        sigma = ScalarAutomorphismSpec(tuple(p), sigma_basis)
    return PresentationFile(torus, sigma)


def read_presentation(path) -> PresentationFile:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def render_presentation(Q: QTorusPresentation, sigma: ScalarAutomorphismSpec | None = None) -> str:
    """Inverse of :func:`parse_presentation`, up to comments and layout."""
    out = ["[torus]", f"n = {Q.n}", f"mode = {Q.basis.mode}"]
    if Q.basis.mode == scalars.SYMBOLIC and Q.basis.labels:
        out.append("generators = " + " ".join(Q.basis.labels))
    for i in range(Q.n):
        for j in range(i + 1, Q.n):
            if any(Q.Q[i][j]):
                out.append(f"q {i + 1} {j + 1} = {scalars.render(Q.Q[i][j], Q.basis)}")
    if sigma is not None:
        out += ["", "[sigma]"]
        if sigma.basis != Q.basis:
            out.append("generators = " + " ".join(sigma.basis.labels))
        for i, v in enumerate(sigma.p):
            if any(v):
                out.append(f"p {i + 1} = {scalars.render(v, sigma.basis)}")
    return "\n".join(out) + "\n"
