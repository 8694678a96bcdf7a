"""Text forms for the command line.

Algebra expressions are sums of terms ``[coef *] factor factor ...`` where a
factor is ``u(<elt>)``, ``s(<p>)`` or ``e(<elt>, <p>)``, optionally followed
by ``*`` for the adjoint.  Coefficients are rationals, ``i`` multiples, or a
parenthesised Gaussian like ``(1/2+3/4i)``.  Group elements use Python
literal syntax (``3``, ``(1, -2)``, ``{0: 1}``); monoid elements look like
``g0^2*g1``.
"""

from __future__ import annotations

import re

from .coeffs import Gaussian
from .cosetlat import Coset, make_coset
from .diagonal import DiagonalElement
from .dynsys import DynamicalSystem
from .errors import DomainError
from .monoalg import AlgebraElement, e, mono_star, s, u
from .pmonoid import PElement

__all__ = ["parse_algebra", "parse_diagonal", "parse_coset", "split_top"]

_COEF = re.compile(r"\s*(\([-+0-9/ i]*\)|[0-9][0-9/]*i?|i)\s*(\*)?\s*")


def _closing(text: str, start: int) -> int:
    """Index of the parenthesis closing the one at ``start``."""
    depth = 0
    pairs = {"(": ")", "[": "]", "{": "}"}
    for k in range(start, len(text)):
        ch = text[k]
        if ch in pairs:
            depth += 1
        elif ch in pairs.values():
            depth -= 1
            if depth == 0:
                return k
    raise DomainError(f"unbalanced parentheses in {text!r}")


def split_top(text: str, seps: str) -> list[tuple[str, str]]:
    """Split at separators outside brackets; returns (separator, chunk) pairs."""
    out, depth, cur, sep = [], 0, [], ""
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if depth == 0 and ch in seps:
            out.append((sep, "".join(cur)))
            sep, cur = ch, []
        else:
            cur.append(ch)
    out.append((sep, "".join(cur)))
    return out


def _term_chunks(text: str) -> list[tuple[str, str]]:
    chunks = []
    for sep, chunk in split_top(text, "+-"):
        # a sign glued to the start of a coefficient belongs to it, not to a new term
        if not chunk.strip():
            if sep or chunks:
                chunks.append((sep, ""))
            continue
        chunks.append((sep, chunk))
    merged: list[tuple[str, str]] = []
    sign = ""
    for sep, chunk in chunks:
        if not chunk.strip():
            sign = "-" if (sign == "-") != (sep == "-") else "+"
            continue
        if sign:
            sep = "-" if (sign == "-") != (sep == "-") else "+"
            sign = ""
        merged.append((sep, chunk))
    return merged


def _parse_term(sys: DynamicalSystem, text: str) -> AlgebraElement:
    G = sys.group
    coef = Gaussian(1)
    pos = 0
    m = _COEF.match(text)
    if m and (m.group(2) or m.end() == len(text)):
        coef = Gaussian.parse(m.group(1))
        pos = m.end()
    result = AlgebraElement.of(sys, u(sys, G.identity()), coef)
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        kind = text[pos]
        if kind not in "use" or pos + 1 >= len(text) or text[pos + 1] != "(":
            raise DomainError(f"unexpected {text[pos:]!r}")
        end = _closing(text, pos + 1)
        arg = text[pos + 2:end]
        if kind == "u":
            mono = u(sys, G.parse(arg))
        elif kind == "s":
            mono = s(sys, PElement.parse(arg))
        else:
            parts = split_top(arg, ",")
            if len(parts) < 2:
                raise DomainError(f"e(...) needs an element and a level: {arg!r}")
            elt = ",".join(c if not sep else sep + c for sep, c in parts[:-1])
            mono = e(sys, G.parse(elt), PElement.parse(parts[-1][1]))
        pos = end + 1
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos < len(text) and text[pos] == "*":
            mono = mono_star(sys, mono)
            pos += 1
        result = result * AlgebraElement.of(sys, mono)
    return result


def parse_algebra(sys: DynamicalSystem, text: str) -> AlgebraElement:
    total = AlgebraElement(sys)
    for sep, chunk in _term_chunks(text):
        term = _parse_term(sys, chunk.strip())
        total = total - term if sep == "-" else total + term
    return total


def parse_diagonal(sys: DynamicalSystem, text: str) -> DiagonalElement:
    """Parse an expression whose terms all reduce to projections ``e_{g,p}``."""
    a = parse_algebra(sys, text)
    out = {}
    for m, c in a.terms.items():
        if m.p != m.q or m.g != m.h:
            raise DomainError(f"term {m} is not a projection e(g, p)")
        out[Coset(m.g, m.p)] = c
    return DiagonalElement(sys, out)


def parse_coset(sys: DynamicalSystem, text: str) -> Coset:
    """``g=<elt>,p=<p>`` (either order)."""
    fields = {}
    key = None
    for sep, chunk in split_top(text, ","):
        if "=" in chunk and chunk.split("=", 1)[0].strip() in ("g", "p"):
            key, val = chunk.split("=", 1)
            key = key.strip()
            fields[key] = val
        elif key is not None:
            fields[key] += "," + chunk
        else:
            raise DomainError(f"cannot parse coset {text!r}")
    if set(fields) != {"g", "p"}:
        raise DomainError(f"coset needs g= and p=: {text!r}")
    return make_coset(sys, sys.group.parse(fields["g"]), PElement.parse(fields["p"]))
