"""Exact scalar arithmetic over the rationals and the Gaussian rationals.

Every number in the library is either a `fractions.Fraction` (field "Q") or
a `GaussianRational` (field "Q(i)").  There is no floating point anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction


class GaussianRational:
    """a + b*i with exact rational components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussianRational is immutable")

    def _coerce(self, other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def _format_rational(x: Fraction) -> str:
    return str(x)


class ScalarField:
    """Field descriptor shared by all algebra objects.

    Two singletons exist, QQ ("Q") and QI ("Q(i)").  Values are plain
    Fractions over QQ and GaussianRationals over QI; `coerce` normalizes.
    """

    def __init__(self, name: str):
        self.name = name

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    @property
    def i(self):
        if self.name != "Q(i)":
            raise ValueError("imaginary unit only exists over Q(i)")
        return GaussianRational(0, 1)

    def coerce(self, x):
        if self.name == "Q":
            if isinstance(x, GaussianRational):
                if x.im != 0:
                    raise ValueError("cannot coerce imaginary value into Q")
                return x.re
            return Fraction(x)
        if isinstance(x, GaussianRational):
            return x
        return GaussianRational(Fraction(x), 0)

    def conj(self, x):
        x = self.coerce(x)
        if isinstance(x, GaussianRational):
            return x.conjugate()
        return x

    def is_rational(self, x) -> bool:
        x = self.coerce(x)
        if isinstance(x, GaussianRational):
            return x.im == 0
        return True

    def rational_part(self, x) -> Fraction:
        x = self.coerce(x)
        if isinstance(x, GaussianRational):
            return x.re
        return x

    def imag_part(self, x) -> Fraction:
        x = self.coerce(x)
        if isinstance(x, GaussianRational):
            return x.im
        return Fraction(0)

    def is_positive_real(self, x) -> bool:
        x = self.coerce(x)
        if isinstance(x, GaussianRational):
            return x.im == 0 and x.re > 0
        return x > 0

    # -- canonical text form ------------------------------------------------

    def format(self, x) -> str:
        x = self.coerce(x)
        if not isinstance(x, GaussianRational):
            return _format_rational(x)
        if x.im == 0:
            return _format_rational(x.re)
        if x.im == 1:
            ip = "i"
        elif x.im == -1:
            ip = "-i"
        else:
            ip = _format_rational(x.im) + "*i"
        if x.re == 0:
            return ip
        if ip.startswith("-"):
            return _format_rational(x.re) + "-" + ip[1:]
        return _format_rational(x.re) + "+" + ip

    def parse(self, s):
        """Parse the canonical scalar form, e.g. "3/4", "-i", "1/2-3*i"."""
        s = s.strip().replace(" ", "")
        if not s:
            raise ValueError("empty scalar")
        re_part = Fraction(0)
        im_part = Fraction(0)
        # split into signed chunks
        chunks = []
        start = 0
        for k, ch in enumerate(s):
            if ch in "+-" and k > start:
                chunks.append(s[start:k])
                start = k
        chunks.append(s[start:])
        for chunk in chunks:
            sign = Fraction(1)
            if chunk.startswith("+"):
                chunk = chunk[1:]
            elif chunk.startswith("-"):
                sign = Fraction(-1)
                chunk = chunk[1:]
            if not chunk:
                raise ValueError(f"malformed scalar {s!r}")
            if chunk == "i":
                im_part += sign
            elif chunk.endswith("*i"):
                coef = chunk[:-2]
                if not _RATIONAL_RE.match(coef):
                    raise ValueError(f"malformed scalar {s!r}")
                im_part += sign * Fraction(coef)
            else:
                if not _RATIONAL_RE.match(chunk):
                    raise ValueError(f"malformed scalar {s!r}")
                re_part += sign * Fraction(chunk)
        if self.name == "Q":
            if im_part != 0:
                raise ValueError(f"imaginary scalar {s!r} not allowed over Q")
            return re_part
        return GaussianRational(re_part, im_part)

    def __repr__(self):
        return f"ScalarField({self.name})"


QQ = ScalarField("Q")
QI = ScalarField("Q(i)")

FIELDS = {"Q": QQ, "Q(i)": QI}


def field_by_name(name: str) -> ScalarField:
    try:
        return FIELDS[name]
    except KeyError:
        raise ValueError(f"unknown scalar field {name!r}") from None
