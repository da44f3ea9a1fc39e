"""Text grammar for polynomial values in files and reports.

    polynomial := '0' | term (('+'|'-') term)*
    term       := factor ('*' factor)*
    factor     := rational | 'i' | name ('^' uint)?
    rational   := ['-'] uint ['/' uint]

A term carries at most one rational factor and at most one 'i'.  Gaussian
coefficients with both parts nonzero are emitted as two separate terms, so
emission is canonical and parse(emit(x)) == x holds bit for bit.
"""

from __future__ import annotations

import re
from fractions import Fraction

_TOKEN = re.compile(r"\d+/\d+|\d+|[A-Za-z_][A-Za-z0-9_]*|\^|\*|\+|-|i")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class PolyParseError(ValueError):
    pass


def parse_poly(field, text):
    """Parse into a list of (coefficient, ((name, exp), ...)) terms.

    Repeated names inside one term are not merged here; callers feed the
    factor list to their own monomial constructor (which owns sign rules).
    """
    s = text.strip()
    if not s:
        raise PolyParseError("empty polynomial")
    if s == "0":
        return []
    pos = 0
    tokens = []
    for m in _TOKEN.finditer(s):
        if m.start() != pos and s[pos:m.start()].strip():
            raise PolyParseError(f"bad character in {text!r}")
        if m.start() != pos:
            raise PolyParseError(f"unexpected whitespace in {text!r}")
        tokens.append(m.group(0))
        pos = m.end()
    if pos != len(s):
        raise PolyParseError(f"trailing garbage in {text!r}")

    terms = []
    idx = 0
    sign = 1
    if tokens and tokens[0] in "+-":
        sign = -1 if tokens[0] == "-" else 1
        idx = 1
    while idx < len(tokens):
        coef = Fraction(1)
        has_i = False
        factors = []
        expect_factor = True
        while idx < len(tokens) and tokens[idx] not in "+-":
            tok = tokens[idx]
            if tok == "*":
                if expect_factor:
                    raise PolyParseError(f"misplaced '*' in {text!r}")
                expect_factor = True
                idx += 1
                continue
            if not expect_factor:
                raise PolyParseError(f"missing '*' in {text!r}")
            if tok == "i":
                if has_i:
                    raise PolyParseError(f"repeated 'i' in a term of {text!r}")
                has_i = True
                idx += 1
            elif tok[0].isdigit():
                coef = coef * Fraction(tok)
                idx += 1
            elif _NAME.match(tok):
                name = tok
                exp = 1
                idx += 1
                if idx < len(tokens) and tokens[idx] == "^":
                    idx += 1
                    if idx >= len(tokens) or not tokens[idx].isdigit():
                        raise PolyParseError(f"bad exponent in {text!r}")
                    exp = int(tokens[idx])
                    idx += 1
                factors.append((name, exp))
            else:
                raise PolyParseError(f"unexpected token {tok!r} in {text!r}")
            expect_factor = False
        if expect_factor:
            raise PolyParseError(f"empty term in {text!r}")
        c = coef * sign
        if has_i:
            if field.name != "Q(i)":
                raise PolyParseError("'i' used in a rational-only context")
            value = field.coerce(0) + field.i * c
        else:
            value = field.coerce(c)
        terms.append((value, tuple(factors)))
        if idx < len(tokens):
            sign = -1 if tokens[idx] == "-" else 1
            idx += 1
            if idx >= len(tokens):
                raise PolyParseError(f"dangling operator in {text!r}")
    return terms


def format_poly(field, items):
    """Canonical polynomial string from (coefficient, monomial-string) pairs.

    The monomial string may be "" for a pure scalar term.  Items must come in
    the caller's canonical order; zero coefficients are skipped.
    """
    frags = []
    for coef, mono in items:
        coef = field.coerce(coef)
        if not coef:
            continue
        re_part = field.rational_part(coef)
        im_part = field.imag_part(coef)
        if re_part:
            frags.append(_frag(re_part, False, mono))
        if im_part:
            frags.append(_frag(im_part, True, mono))
    if not frags:
        return "0"
    out = frags[0]
    for f in frags[1:]:
        out += ("-" + f[1:]) if f.startswith("-") else ("+" + f)
    return out


def _frag(rat: Fraction, imaginary: bool, mono: str) -> str:
    neg = rat < 0
    mag = -rat if neg else rat
    parts = []
    if mag != 1 or (not imaginary and not mono):
        parts.append(str(mag))
    if imaginary:
        parts.append("i")
    if mono:
        parts.append(mono)
    return ("-" if neg else "") + "*".join(parts)
