"""Bivariate Laurent polynomial algebra over complex doubles.

A :class:`LaurentPoly2` is a finitely supported map from integer exponent
pairs ``(j, k)`` to complex coefficients, representing
``sum a_{jk} z**j w**k``.  The module provides arithmetic, evaluation
(scalar or numpy-broadcast), partial derivatives, the unit-torus
reflection ``sum conj(a_{jk}) z**-j w**-k``, 2x2 Jacobian determinants,
and a small expression parser with a canonical serialization.

All values are immutable; every operation returns a fresh polynomial in
canonical form (one entry per exponent pair, coefficients below the
cancellation threshold dropped).
"""

from __future__ import annotations

import re
from typing import Iterator, Mapping

import numpy as np

# Coefficients with modulus below this are treated as float dust from
# cross products and removed during canonicalization.
CANCEL_TOL = 1e-12

# Largest admissible |exponent|, both in parsed literals and results.
MAX_EXPONENT = 10**6

__all__ = [
    "CANCEL_TOL",
    "MAX_EXPONENT",
    "LaurentPoly2",
    "LaurentSyntaxError",
    "PoleError",
    "det2",
    "parse",
]


class LaurentSyntaxError(ValueError):
    """Malformed polynomial expression; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class PoleError(ZeroDivisionError):
    """A negative exponent met a zero coordinate during evaluation."""


def _canonical(terms) -> dict:
    out = {}
    for (j, k), c in terms.items():
        c = complex(c)
        if not (np.isfinite(c.real) and np.isfinite(c.imag)):
            raise ValueError(f"non-finite coefficient {c!r} at exponent ({j}, {k})")
        if abs(j) > MAX_EXPONENT or abs(k) > MAX_EXPONENT:
            raise OverflowError(f"exponent ({j}, {k}) exceeds +/-{MAX_EXPONENT}")
        if abs(c) < CANCEL_TOL:
            continue
        # +0.0 folds IEEE negative zeros so equal polynomials print identically
        out[(int(j), int(k))] = complex(c.real + 0.0, c.imag + 0.0)
    return out


class LaurentPoly2:
    """Finitely supported complex Laurent polynomial in z and w.

    Parameters
    ----------
    terms : mapping
        ``{(j, k): coefficient}``.  Duplicates are not possible (dict);
        near-zero coefficients are dropped.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        self._terms = _canonical(dict(terms or {}))
        self._hash = None

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly2":
        return cls({})

    @classmethod
    def constant(cls, c) -> "LaurentPoly2":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c, j: int, k: int) -> "LaurentPoly2":
        return cls({(j, k): c})

    @classmethod
    def z(cls) -> "LaurentPoly2":
        return cls({(1, 0): 1.0})

    @classmethod
    def w(cls) -> "LaurentPoly2":
        return cls({(0, 1): 1.0})

    # -- basic queries -------------------------------------------------

    @property
    def terms(self) -> dict:
        """Copy of the canonical term map ``{(j, k): coeff}``."""
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator:
        return iter(sorted(self._terms.items()))

    def exponent_range(self):
        """((min j, max j), (min k, max k)); None for the zero polynomial."""
        if not self._terms:
            return None
        js = [j for j, _ in self._terms]
        ks = [k for _, k in self._terms]
        return (min(js), max(js)), (min(ks), max(ks))

    def has_negative_exponents(self) -> bool:
        return any(j < 0 or k < 0 for j, k in self._terms)

    # -- ring operations ----------------------------------------------

    def __add__(self, other) -> "LaurentPoly2":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for jk, c in other._terms.items():
            out[jk] = out.get(jk, 0.0) + c
        return LaurentPoly2(out)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly2":
        return LaurentPoly2({jk: -c for jk, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPoly2":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPoly2":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "LaurentPoly2":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict = {}
        for (j1, k1), c1 in self._terms.items():
            for (j2, k2), c2 in other._terms.items():
                jk = (j1 + j2, k1 + k2)
                out[jk] = out.get(jk, 0.0) + c1 * c2
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly2":
        if not isinstance(n, int):
            raise TypeError("exponent must be an integer")
        if n < 0:
            if not self.is_monomial:
                raise ValueError("negative powers are defined for monomials only")
            ((j, k), c), = self._terms.items()
            return LaurentPoly2({(-j, -k): 1.0 / c}) ** (-n)
        result = LaurentPoly2.constant(1.0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus ------------------------------------------------------

    def derive(self, var: str) -> "LaurentPoly2":
        """Partial derivative with respect to ``var`` ("z" or "w")."""
        if var == "z":
            return LaurentPoly2(
                {(j - 1, k): j * c for (j, k), c in self._terms.items() if j != 0}
            )
        if var == "w":
            return LaurentPoly2(
                {(j, k - 1): k * c for (j, k), c in self._terms.items() if k != 0}
            )
        raise ValueError(f"unknown variable {var!r}; expected 'z' or 'w'")

    def reflect(self) -> "LaurentPoly2":
        """Unit-torus reflection ``sum conj(a_{jk}) z**-j w**-k``.

        Agrees with the complex conjugate of the polynomial at every
        point of the unit torus, and is an involution.
        """
        return LaurentPoly2(
            {(-j, -k): c.conjugate() for (j, k), c in self._terms.items()}
        )

    # -- evaluation ----------------------------------------------------

    def __call__(self, z, w):
        """Evaluate at ``(z, w)``; scalars or broadcastable numpy arrays.

        Raises
        ------
        PoleError
            If a negative exponent meets a zero coordinate (the
            polynomial has a pole on the coordinate axes).
        ValueError
            On non-finite evaluation input.
        """
        z = np.asarray(z, dtype=complex)
        w = np.asarray(w, dtype=complex)
        if not (np.all(np.isfinite(z)) and np.all(np.isfinite(w))):
            raise ValueError("evaluation input must be finite")
        rng = self.exponent_range()
        if rng is not None:
            (jmin, _), (kmin, _) = rng
            if jmin < 0 and np.any(z == 0):
                raise PoleError("z = 0 with a negative z-exponent present")
            if kmin < 0 and np.any(w == 0):
                raise PoleError("w = 0 with a negative w-exponent present")
        out = np.zeros(np.broadcast(z, w).shape, dtype=complex)
        for (j, k), c in self._terms.items():
            term = np.full_like(out, c)
            if j:
                term = term * z**j
            if k:
                term = term * w**k
            out = out + term
        if out.ndim == 0:
            return complex(out)
        return out

    # -- collected views ------------------------------------------------

    def collect_w(self) -> dict:
        """Group terms by w-exponent: ``{k: {j: coeff}}``."""
        out: dict = {}
        for (j, k), c in self._terms.items():
            out.setdefault(k, {})[j] = c
        return out

    # -- serialization ---------------------------------------------------

    def __str__(self) -> str:
        return format_canonical(self)

    def __repr__(self) -> str:
        return f"LaurentPoly2({format_canonical(self)!r})"


def _coerce(value):
    if isinstance(value, LaurentPoly2):
        return value
    if isinstance(value, (int, float, complex)):
        return LaurentPoly2.constant(value)
    return NotImplemented


def det2(P: LaurentPoly2, Q: LaurentPoly2) -> LaurentPoly2:
    """Jacobian determinant ``dP/dz * dQ/dw - dP/dw * dQ/dz``."""
    return P.derive("z") * Q.derive("w") - P.derive("w") * Q.derive("z")


# ----------------------------------------------------------------------
# Canonical serialization
# ----------------------------------------------------------------------

def _fmt_float(x: float) -> str:
    return f"{x + 0.0:.17g}"


def _fmt_coeff(c: complex) -> str:
    sign = "+" if c.imag >= 0 else "-"
    return f"({_fmt_float(c.real)}{sign}{_fmt_float(abs(c.imag))}i)"


def format_canonical(P: LaurentPoly2) -> str:
    """Canonical text form: terms sorted lexicographically by (j, k),
    coefficients printed with 17 significant digits.  ``parse`` of the
    output reproduces the polynomial exactly.
    """
    if P.is_zero:
        return "0"
    parts = []
    for (j, k), c in sorted(P.terms.items()):
        piece = _fmt_coeff(c)
        for name, e in (("z", j), ("w", k)):
            if e == 0:
                continue
            piece += f"*{name}" if e == 1 else f"*{name}^{e}"
        parts.append(piece)
    return " + ".join(parts)


# ----------------------------------------------------------------------
# Expression parser
# ----------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[zwi])"
    r"|(?P<op>[-+*^()])"
    r")"
)


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens: list = []
        while self.pos < len(text):
            m = _TOKEN_RE.match(text, self.pos)
            if m is None or m.end() == self.pos:
                # skip over whitespace-only tail
                if text[self.pos :].strip() == "":
                    break
                raise LaurentSyntaxError(
                    f"unexpected character {text[self.pos]!r}", self.pos
                )
            if m.group("number") is not None:
                tok = ("number", m.group("number"))
            elif m.group("name") is not None:
                tok = ("name", m.group("name"))
            else:
                tok = ("op", m.group("op"))
            self.tokens.append((tok[0], tok[1], m.start() + len(m.group(0)) - len(m.group(0).lstrip())))
            self.pos = m.end()
        self.index = 0

    def peek(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ("end", "", len(self.text))

    def advance(self):
        tok = self.peek()
        self.index += 1
        return tok


class _Parser:
    """Recursive-descent parser for the expression grammar:

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := base ('^' int)?
    base    := 'z' | 'w' | literal | '(' expr ')'
    literal := float | float 'i' | 'i'

    Parenthesized complex literals like ``(1.5+2i)`` parse through the
    ``'(' expr ')'`` production.  Juxtaposition without ``*`` is a syntax
    error.  Negative powers are admitted for monomial bases only.
    """

    def __init__(self, text: str):
        self.toks = _Tokenizer(text)

    def parse(self) -> LaurentPoly2:
        result = self.expr()
        kind, val, pos = self.toks.peek()
        if kind != "end":
            raise LaurentSyntaxError(f"unexpected token {val!r}", pos)
        return result

    def expr(self) -> LaurentPoly2:
        kind, val, _ = self.toks.peek()
        sign = 1.0
        if kind == "op" and val in "+-":
            self.toks.advance()
            sign = -1.0 if val == "-" else 1.0
        result = sign * self.term()
        while True:
            kind, val, _ = self.toks.peek()
            if kind == "op" and val in "+-":
                self.toks.advance()
                rhs = self.term()
                result = result + rhs if val == "+" else result - rhs
            else:
                return result

    def term(self) -> LaurentPoly2:
        result = self.factor()
        while True:
            kind, val, _ = self.toks.peek()
            if kind == "op" and val == "*":
                self.toks.advance()
                result = result * self.factor()
            else:
                return result

    def factor(self) -> LaurentPoly2:
        base = self.base()
        kind, val, _ = self.toks.peek()
        if kind == "op" and val == "^":
            self.toks.advance()
            n, pos = self.integer()
            if abs(n) > MAX_EXPONENT:
                raise LaurentSyntaxError(f"exponent {n} exceeds +/-{MAX_EXPONENT}", pos)
            try:
                return base**n
            except ValueError as exc:
                raise LaurentSyntaxError(str(exc), pos) from exc
        return base

    def integer(self):
        kind, val, pos = self.toks.advance()
        sign = 1
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            kind, val, pos = self.toks.advance()
        if kind != "number" or any(ch in val for ch in ".eE"):
            raise LaurentSyntaxError("expected an integer exponent", pos)
        return sign * int(val), pos

    def base(self) -> LaurentPoly2:
        kind, val, pos = self.toks.advance()
        if kind == "name":
            if val == "z":
                return LaurentPoly2.z()
            if val == "w":
                return LaurentPoly2.w()
            return LaurentPoly2.constant(1j)
        if kind == "number":
            x = float(val)
            nkind, nval, _ = self.toks.peek()
            if nkind == "name" and nval == "i":
                self.toks.advance()
                return LaurentPoly2.constant(x * 1j)
            return LaurentPoly2.constant(x)
        if kind == "op" and val == "(":
            inner = self.expr()
            kind, val, pos = self.toks.advance()
            if not (kind == "op" and val == ")"):
                raise LaurentSyntaxError("expected ')'", pos)
            return inner
        raise LaurentSyntaxError(
            f"expected 'z', 'w', a literal, or '(' but found {val!r}" if val else "unexpected end of input",
            pos,
        )


def parse(expr: str) -> LaurentPoly2:
    """Parse ``expr`` into a canonical :class:`LaurentPoly2`.

    The grammar accepts variables ``z`` and ``w``, integer exponents
    (possibly negative, monomial bases only for negative powers),
    complex literals such as ``2``, ``0.5i``, ``(1+2i)``, the operators
    ``+ - * ^``, and parentheses.  ``parse(str(P)) == P`` for every
    polynomial ``P``.
    """
    return _Parser(expr).parse()
