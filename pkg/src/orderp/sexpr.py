"""S-expression reader and writer for rings, elements and data.

The reader keeps source positions on every node so later stages can report
``line:col`` diagnostics.  Rings are written as

    (int) | (rat) | (intmod N) | (padic p N) | (poly RING (v ...))
          | (quo RING rel ...) | (local RING p)

with ``rel := (monic v poly) | (rewrite monomial poly)``.  Elements use
integers, variable names, ``(+ ...) (* ...) (- e) (- a b) (^ e n)`` and
``(/ e n)`` for exact division by an integer.
"""

from fractions import Fraction

from .algebra import (
    QQ,
    ZZ,
    Monic,
    MonomialRewrite,
    PAdicDomain,
    ResidueDomain,
    integers,
    integers_mod,
    localization,
    padic_ring,
    polynomial_ring,
    quotient,
    rationals,
)
from .errors import OrderPError


class ParseError(OrderPError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f"{line}:{col}: " if line is not None else ""
        super().__init__(where + message)


class Symbol(str):
    line = col = None


class Keyword(str):
    line = col = None


class String(str):
    line = col = None


class Int(int):
    line = col = None


class SList(list):
    line = col = None


def _at(obj, line, col):
    obj.line, obj.col = line, col
    return obj


def where(node):
    return getattr(node, "line", None), getattr(node, "col", None)


def read_all(text):
    """Parse every top-level form in ``text``."""
    forms = []
    pos = [0, 1, 1]  # index, line, col
    n = len(text)

    def peek():
        return text[pos[0]] if pos[0] < n else ""

    def advance():
        ch = text[pos[0]]
        pos[0] += 1
        if ch == "\n":
            pos[1] += 1
            pos[2] = 1
        else:
            pos[2] += 1
        return ch

    def skip():
        while pos[0] < n:
            ch = peek()
            if ch in " \t\r\n":
                advance()
            elif ch == ";":
                while pos[0] < n and peek() != "\n":
                    advance()
            else:
                break

    def read():
        skip()
        line, col = pos[1], pos[2]
        if pos[0] >= n:
            raise ParseError("unexpected end of input", line, col)
        ch = peek()
        if ch == "(":
            advance()
            items = _at(SList(), line, col)
            while True:
                skip()
                if pos[0] >= n:
                    raise ParseError(f"unclosed list opened at {line}:{col}", pos[1], pos[2])
                if peek() == ")":
                    advance()
                    return items
                items.append(read())
        if ch == ")":
            raise ParseError("unexpected ')'", line, col)
        if ch == '"':
            advance()
            buf = []
            while True:
                if pos[0] >= n:
                    raise ParseError("unterminated string", pos[1], pos[2])
                c = advance()
                if c == '"':
                    return _at(String("".join(buf)), line, col)
                if c == "\\" and pos[0] < n:
                    c = advance()
                buf.append(c)
        buf = []
        while pos[0] < n and peek() not in ' \t\r\n();"':
            buf.append(advance())
        tok = "".join(buf)
        try:
            return _at(Int(int(tok)), line, col)
        except ValueError:
            pass
        if tok.startswith(":") and len(tok) > 1:
            return _at(Keyword(tok), line, col)
        return _at(Symbol(tok), line, col)

    while True:
        skip()
        if pos[0] >= n:
            return forms
        forms.append(read())


def read_one(text):
    forms = read_all(text)
    if len(forms) != 1:
        raise ParseError(f"expected one form, found {len(forms)}", 1, 1)
    return forms[0]


def keyword_args(form, start, allowed, required=()):
    """Split ``form[start:]`` into {keyword: value} and positional items."""
    out = {}
    positional = []
    i = start
    while i < len(form):
        item = form[i]
        if isinstance(item, Keyword):
            if i + 1 >= len(form):
                raise ParseError(f"{item} needs a value", *where(item))
            key = item[1:]
            if key not in allowed:
                raise ParseError(f"unknown option {item}", *where(item))
            out[key] = form[i + 1]
            i += 2
        else:
            positional.append(item)
            i += 1
    for k in required:
        if k not in out:
            raise ParseError(f"missing :{k}", *where(form))
    return out, positional


# ---------------------------------------------------------------------------
# Evaluation of ring and element expressions
# ---------------------------------------------------------------------------


def _int(node, what="integer"):
    if not isinstance(node, int):
        raise ParseError(f"expected {what}", *where(node))
    return int(node)


def eval_ring(node, rings=None):
    """Build a PresentedRing from a ring expression; ``rings`` maps names."""
    rings = rings or {}
    if isinstance(node, Symbol):
        if node in rings:
            return rings[node]
        if node == "Z":
            return integers()
        if node == "Q":
            return rationals()
        raise ParseError(f"unknown ring {node}", *where(node))
    if not isinstance(node, list) or not node or not isinstance(node[0], Symbol):
        raise ParseError("expected a ring expression", *where(node))
    head = node[0]
    args = node[1:]
    try:
        if head == "int" and not args:
            return integers()
        if head == "rat" and not args:
            return rationals()
        if head == "intmod" and len(args) == 1:
            return integers_mod(_int(args[0]))
        if head == "padic" and len(args) == 2:
            return padic_ring(_int(args[0]), _int(args[1]))
        if head == "poly" and len(args) == 2:
            base = eval_ring(args[0], rings)
            if not isinstance(args[1], list) or not all(isinstance(v, Symbol) for v in args[1]):
                raise ParseError("expected a list of variable names", *where(args[1]))
            return polynomial_ring(base, [str(v) for v in args[1]])
        if head == "quo" and args:
            base = eval_ring(args[0], rings)
            return quotient(base, [_eval_relation(r, base, rings) for r in args[1:]])
        if head == "local" and len(args) == 2:
            return localization(eval_ring(args[0], rings), _int(args[1]))
    except ParseError:
        raise
    except OrderPError as exc:
        raise ParseError(str(exc), *where(node)) from None
    raise ParseError(f"malformed ring expression ({head} ...)", *where(node))


def _eval_relation(node, R, rings):
    if not isinstance(node, list) or len(node) != 3 or not isinstance(node[0], Symbol):
        raise ParseError("expected (monic v poly) or (rewrite monomial poly)", *where(node))
    head = node[0]
    if head == "monic":
        if not isinstance(node[1], Symbol):
            raise ParseError("expected a variable name", *where(node[1]))
        return Monic(str(node[1]), eval_element(node[2], R))
    if head == "rewrite":
        return MonomialRewrite(eval_element(node[1], R), eval_element(node[2], R))
    raise ParseError(f"unknown relation {head}", *where(node))


def eval_element(node, R, names=None):
    """Evaluate an element expression in R; ``names`` maps declared elements."""
    names = names or {}
    try:
        return _eval(node, R, names)
    except ParseError:
        raise
    except OrderPError as exc:
        raise ParseError(str(exc), *where(node)) from None


def _eval(node, R, names):
    if isinstance(node, int):
        return R(int(node))
    if isinstance(node, Symbol):
        if node in R.variables:
            return R.gen(str(node))
        if node in names:
            return R(names[node])
        raise ParseError(f"unknown name {node}", *where(node))
    if not isinstance(node, list) or not node or not isinstance(node[0], Symbol):
        raise ParseError("expected an element expression", *where(node))
    head, args = node[0], node[1:]
    if head == "+":
        acc = R.zero()
        for a in args:
            acc = acc + _eval(a, R, names)
        return acc
    if head == "*":
        acc = R.one()
        for a in args:
            acc = acc * _eval(a, R, names)
        return acc
    if head == "-":
        if len(args) == 1:
            return -_eval(args[0], R, names)
        if len(args) == 2:
            return _eval(args[0], R, names) - _eval(args[1], R, names)
    if head == "^" and len(args) == 2:
        k = _int(args[1], "non-negative exponent")
        if k < 0:
            raise ParseError("negative exponent", *where(args[1]))
        return _eval(args[0], R, names) ** k
    if head == "/" and len(args) == 2:
        return _divide(_eval(args[0], R, names), _int(args[1], "integer divisor"), node)
    raise ParseError(f"malformed expression ({head} ...)", *where(node))


def _divide(e, n, node):
    R = e.ring
    if n == 0:
        raise ParseError("division by zero", *where(node))
    dom = R.domain
    if dom == ZZ:
        if any(c % n for c in e._terms.values()):
            raise ParseError(f"{e} is not divisible by {n}", *where(node))
        return R({m: c // n for m, c in e._terms.items()})
    if dom == QQ:
        return R({m: Fraction(c) / n for m, c in e._terms.items()})
    if not dom.is_unit(dom.convert(n)):
        raise ParseError(f"{n} is not invertible in {R}", *where(node))
    return e * R(dom.inverse(dom.convert(n)))


# ---------------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------------


def write_ring(R):
    dom = R.domain
    if isinstance(dom, PAdicDomain):
        base = f"(padic {dom.prime} {dom.precision})"
    elif isinstance(dom, ResidueDomain):
        base = f"(intmod {dom.modulus})"
    elif dom == ZZ or (dom == QQ and R.local_prime is not None):
        base = "(int)"
    else:
        base = "(rat)"
    s = base
    if R.variables:
        s = f"(poly {s} ({' '.join(R.variables)}))"
    if R.rules:
        rels = []
        for r in R.rules:
            mono = _monomial_text(R.variables, r.lhs)
            rhs = _terms_text(R, dict(r.rhs))
            rels.append(f"(rewrite {mono} {rhs})")
        s = f"(quo {s} {' '.join(rels)})"
    if R.local_prime is not None:
        s = f"(local {s} {R.local_prime})"
    return s


def _coeff_text(c):
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"(/ {c.numerator} {c.denominator})"
    return str(int(c))


def _monomial_text(variables, m):
    factors = [v if k == 1 else f"(^ {v} {k})" for v, k in zip(variables, m) if k]
    if not factors:
        return "1"
    return factors[0] if len(factors) == 1 else f"(* {' '.join(factors)})"


def _term_text(variables, m, c, dom):
    c = dom.signed(c)
    mono = _monomial_text(variables, m)
    if mono == "1":
        return _coeff_text(c)
    if c == 1:
        return mono
    if c == -1:
        return f"(- {mono})"
    inner = mono[3:-1] if mono.startswith("(* ") else mono
    return f"(* {_coeff_text(c)} {inner})"


def _terms_text(R, terms):
    from .algebra import _order_key

    items = sorted(terms.items(), key=lambda t: _order_key(t[0]), reverse=True)
    parts = [_term_text(R.variables, m, c, R.domain) for m, c in items if c]
    if not parts:
        return "0"
    return parts[0] if len(parts) == 1 else f"(+ {' '.join(parts)})"


def write_element(e):
    """Expression text for e (to be read back in e.ring)."""
    return _terms_text(e.ring, e._terms)
