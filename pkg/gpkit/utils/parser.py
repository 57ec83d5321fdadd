"""
Text syntax for kernels, mean functions and likelihoods.

The syntax mirrors the constructor calls, e.g.

    Matern(5/2, [0.0, 0.0], 0.0) + SE(0.0, 0.0)
    (SE(0.0,0.0) + SE(0.5,0.5)) * RQ(0.0,0.0,0.0)
    fix(SE(0.0, 0.0), lsigma)
    masked(SE(0.0,0.0), [1]) + masked(RQ(0.0,0.0,0.0), collect(2:10))

Grammar (recursive descent, '*' binds tighter than '+'):

    expr   := term ('+' term)*
    term   := factor ('*' factor)*
    factor := call | '(' expr ')'
    call   := IDENT '(' [arg (',' arg)*] ')'
    arg    := expr | number | number '/' number | vector | collect(a:b) | IDENT

Masked dimensions are 1-based in text. Error offsets are 1-based character
positions into the text.
"""
import re
from dataclasses import dataclass, field

import numpy as np

from gpkit.errors import ConfigurationError, ParseError
from gpkit.kernels import Const, Fixed, Lin, Masked, Matern, Noise, Periodic, Poly, RQ, SE
from gpkit.kernels.composite import ProductKernel, SumKernel
from gpkit.likelihoods import BernLik, BinLik, ExpLik, GaussLik, PoisLik, StuTLik
from gpkit.means import MeanConst, MeanLin, MeanPoly, MeanZero
from gpkit.means.base import ProdMean, SumMean

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[^\W\d]\w*)
  | (?P<punct>[()\[\],+*/:-])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


# Syntax tree; offsets are kept for error messages but ignored by ==.

@dataclass(frozen=True)
class Num:
    value: float
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Ratio:
    num: float
    den: float
    offset: int = field(default=0, compare=False)

    @property
    def value(self):
        return self.num / self.den


@dataclass(frozen=True)
class Vec:
    items: tuple
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Name:
    name: str
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Sum:
    terms: tuple
    offset: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Prod:
    factors: tuple
    offset: int = field(default=0, compare=False)


def tokenize(text):
    """Split text into tokens, ending with an "end" token one past the last character."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", offset=pos + 1)
        if m.lastgroup != "ws":
            tokens.append(Token(m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


def _describe(token):
    return "end of input" if token.kind == "end" else repr(token.text)


class _Parser:

    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self):
        return self.tokens[self.pos]

    def _is(self, text):
        return self.tok.kind == "punct" and self.tok.text == text

    def _fail(self, *expected):
        quoted = " or ".join(f"'{e}'" if len(e) == 1 else e for e in expected)
        raise ParseError(f"expected {quoted}, found {_describe(self.tok)}", offset=self.tok.offset,
                         expected=expected)

    def _take(self, text):
        if not self._is(text):
            self._fail(text)
        self.pos += 1

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            self._fail("+", "*", "end of input")
        return node

    def expr(self):
        start = self.tok.offset
        terms = [self.term()]
        while self._is("+"):
            self.pos += 1
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms), start)

    def term(self):
        start = self.tok.offset
        factors = [self.factor()]
        while self._is("*"):
            self.pos += 1
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors), start)

    def factor(self):
        if self._is("("):
            self.pos += 1
            node = self.expr()
            self._take(")")
            return node
        if self.tok.kind == "ident":
            return self.call()
        self._fail("identifier", "(")

    def call(self):
        name = self.tok
        self.pos += 1
        self._take("(")
        args = []
        if not self._is(")"):
            args.append(self.arg())
            while self._is(","):
                self.pos += 1
                args.append(self.arg())
        if not self._is(")"):
            self._fail(")", ",")
        self.pos += 1
        return Call(name.text, tuple(args), name.offset)

    def arg(self):
        tok = self.tok
        if tok.kind == "number" or self._is("-"):
            return self.number()
        if self._is("["):
            return self.vector()
        if tok.kind == "ident":
            nxt = self.tokens[self.pos + 1]
            if tok.text == "collect" and nxt.text == "(":
                return self.collect()
            if not (nxt.kind == "punct" and nxt.text == "("):
                self.pos += 1
                return Name(tok.text, tok.offset)
        return self.expr()

    def number(self):
        start = self.tok.offset
        sign = 1.0
        if self._is("-"):
            sign = -1.0
            self.pos += 1
        if self.tok.kind != "number":
            self._fail("number")
        value = sign * float(self.tok.text)
        self.pos += 1
        if self._is("/"):
            self.pos += 1
            if self.tok.kind != "number":
                self._fail("number")
            den = float(self.tok.text)
            if den == 0:
                raise ParseError("division by zero", offset=self.tok.offset)
            self.pos += 1
            return Ratio(value, den, start)
        return Num(value, start)

    def vector(self):
        start = self.tok.offset
        self._take("[")
        items = []
        if not self._is("]"):
            items.append(self.vector() if self._is("[") else self.number())
            while self._is(","):
                self.pos += 1
                items.append(self.vector() if self._is("[") else self.number())
        if not self._is("]"):
            self._fail("]", ",")
        self.pos += 1
        return Vec(tuple(items), start)

    def collect(self):
        start = self.tok.offset
        self.pos += 1
        self._take("(")
        lo = self.number()
        self._take(":")
        hi = self.number()
        self._take(")")
        if lo.value != int(lo.value) or hi.value != int(hi.value) or hi.value < lo.value:
            raise ParseError("collect needs an increasing integer range a:b", offset=start)
        items = tuple(Num(float(v), start) for v in range(int(lo.value), int(hi.value) + 1))
        return Vec(items, start)


def parse(text):
    """Parse text into a syntax tree without checking names or arities."""
    return _Parser(text).parse()


def render(node):
    """Text for a syntax tree; parse(render(t)) == t."""
    if isinstance(node, Num):
        return repr(float(node.value))
    if isinstance(node, Ratio):
        return f"{_int_text(node.num)}/{_int_text(node.den)}"
    if isinstance(node, Vec):
        return "[" + ", ".join(render(item) for item in node.items) + "]"
    if isinstance(node, Name):
        return node.name
    if isinstance(node, Call):
        return f"{node.name}(" + ", ".join(render(a) for a in node.args) + ")"
    if isinstance(node, Sum):
        return " + ".join(f"({render(t)})" if isinstance(t, Sum) else render(t) for t in node.terms)
    if isinstance(node, Prod):
        return " * ".join(f"({render(f)})" if isinstance(f, (Sum, Prod)) else render(f) for f in node.factors)
    raise TypeError(f"not a syntax tree node: {node!r}")


def _int_text(value):
    return str(int(value)) if value == int(value) else repr(float(value))


# Building objects from trees

def _arity(node, *counts):
    if len(node.args) not in counts:
        wanted = " or ".join(str(c) for c in counts)
        raise ParseError(f"{node.name} takes {wanted} argument(s), got {len(node.args)}", offset=node.offset)


def _scalar(node, what):
    if isinstance(node, (Num, Ratio)):
        return node.value
    raise ParseError(f"{what} must be a number", offset=node.offset)


def _numbers(node, what):
    """A number or a (nested) vector of numbers as a float or an ndarray."""
    if isinstance(node, (Num, Ratio)):
        return node.value
    if isinstance(node, Vec):
        if not node.items:
            raise ParseError(f"{what} must not be empty", offset=node.offset)
        values = [_numbers(item, what) for item in node.items]
        try:
            return np.array(values, dtype=float)
        except ValueError:
            raise ParseError(f"{what} has rows of different lengths", offset=node.offset)
    raise ParseError(f"{what} must be a number or a vector", offset=node.offset)


def _length_scales(node, name):
    value = _numbers(node, f"{name} length scale")
    if np.ndim(value) > 1:
        raise ParseError(f"{name} length scales must be a vector", offset=node.offset)
    return value


# names accepted by fix() besides the short parameter names
_PARAM_ALIASES = {"σ": "lsigma", "sigma": "lsigma", "ℓ": "ll", "l": "ll", "p": "lp", "α": "lalpha",
                  "alpha": "lalpha", "c": "lc"}


def _kernel_call(node):
    name, args = node.name, node.args
    try:
        if name == "SE":
            _arity(node, 2)
            return SE(_length_scales(args[0], name), _scalar(args[1], "log sigma"))
        if name == "Matern":
            _arity(node, 3)
            return Matern(_scalar(args[0], "Matern order"), _length_scales(args[1], name),
                          _scalar(args[2], "log sigma"))
        if name == "RQ":
            _arity(node, 3)
            return RQ(_length_scales(args[0], name), _scalar(args[1], "log sigma"), _scalar(args[2], "log alpha"))
        if name == "Periodic":
            _arity(node, 3)
            return Periodic(*(_scalar(a, "Periodic parameter") for a in args))
        if name == "Lin":
            _arity(node, 1)
            return Lin(_length_scales(args[0], name))
        if name == "Poly":
            _arity(node, 3)
            return Poly(_scalar(args[0], "log c"), _scalar(args[1], "log sigma"), _scalar(args[2], "degree"))
        if name in ("Const", "Noise"):
            _arity(node, 1)
            return (Const if name == "Const" else Noise)(_scalar(args[0], "log sigma"))
        if name == "fix":
            if not args:
                raise ParseError("fix takes a kernel and optional parameter names", offset=node.offset)
            names = []
            for a in args[1:]:
                if not isinstance(a, Name):
                    raise ParseError("fix: parameters are named by identifiers", offset=a.offset)
                names.append(_PARAM_ALIASES.get(a.name, a.name))
            return Fixed(build_kernel(args[0]), *names)
        if name in ("masked", "Masked"):
            _arity(node, 2)
            dims = np.atleast_1d(_numbers(args[1], "masked dimensions"))
            if dims.ndim != 1 or np.any(dims != np.round(dims)) or np.any(dims < 1):
                raise ParseError("masked dimensions must be positive integers", offset=args[1].offset)
            return Masked(build_kernel(args[0]), dims.astype(int) - 1)
    except ParseError:
        raise
    except ConfigurationError as e:
        raise ParseError(e.message, offset=node.offset)
    raise ParseError(f"unknown kernel {name!r}", offset=node.offset, expected=KERNEL_NAMES)


KERNEL_NAMES = ("Const", "Lin", "Matern", "SE", "Periodic", "Poly", "Noise", "RQ", "fix", "masked")


def build_kernel(node):
    """Kernel object for a syntax tree."""
    if isinstance(node, Sum):
        return SumKernel([build_kernel(t) for t in node.terms])
    if isinstance(node, Prod):
        return ProductKernel([build_kernel(f) for f in node.factors])
    if isinstance(node, Call):
        return _kernel_call(node)
    raise ParseError("expected a kernel", offset=node.offset, expected=KERNEL_NAMES)


def parse_kernel(text):
    """
    Parse and check a kernel expression.

    Returns:
        The syntax tree; build_kernel turns it into a Kernel.
    """
    tree = parse(text)
    build_kernel(tree)
    return tree


def kernel_from_text(text):
    return build_kernel(parse(text))


MEAN_NAMES = ("MeanZero", "MeanConst", "MeanLin", "MeanPoly")


def build_mean(node):
    """Mean function for a syntax tree."""
    if isinstance(node, Sum):
        return SumMean([build_mean(t) for t in node.terms])
    if isinstance(node, Prod):
        return ProdMean([build_mean(f) for f in node.factors])
    if not isinstance(node, Call):
        raise ParseError("expected a mean function", offset=node.offset, expected=MEAN_NAMES)
    name, args = node.name, node.args
    try:
        if name == "MeanZero":
            _arity(node, 0)
            return MeanZero()
        if name == "MeanConst":
            _arity(node, 1)
            return MeanConst(_scalar(args[0], "MeanConst value"))
        if name == "MeanLin":
            _arity(node, 1)
            return MeanLin(_numbers(args[0], "MeanLin coefficients"))
        if name == "MeanPoly":
            _arity(node, 1)
            return MeanPoly(_numbers(args[0], "MeanPoly coefficients"))
    except ParseError:
        raise
    except ConfigurationError as e:
        raise ParseError(e.message, offset=node.offset)
    raise ParseError(f"unknown mean function {name!r}", offset=node.offset, expected=MEAN_NAMES)


def parse_mean(text):
    tree = parse(text)
    build_mean(tree)
    return tree


def mean_from_text(text):
    return build_mean(parse(text))


LIKELIHOOD_NAMES = ("BernLik", "BinLik", "ExpLik", "GaussLik", "PoisLik", "StuTLik")


def build_likelihood(node):
    """Likelihood for a syntax tree (a single call)."""
    if not isinstance(node, Call):
        raise ParseError("expected a likelihood", offset=node.offset, expected=LIKELIHOOD_NAMES)
    name, args = node.name, node.args
    try:
        if name in ("BernLik", "ExpLik", "PoisLik"):
            _arity(node, 0)
            return {"BernLik": BernLik, "ExpLik": ExpLik, "PoisLik": PoisLik}[name]()
        if name == "BinLik":
            _arity(node, 1)
            return BinLik(_scalar(args[0], "number of trials"))
        if name == "GaussLik":
            _arity(node, 1)
            return GaussLik(_scalar(args[0], "log sigma"))
        if name == "StuTLik":
            _arity(node, 2)
            return StuTLik(_scalar(args[0], "degrees of freedom"), _scalar(args[1], "log sigma"))
    except ParseError:
        raise
    except ConfigurationError as e:
        raise ParseError(e.message, offset=node.offset)
    raise ParseError(f"unknown likelihood {name!r}", offset=node.offset, expected=LIKELIHOOD_NAMES)


def parse_likelihood(text):
    tree = parse(text)
    build_likelihood(tree)
    return tree


def likelihood_from_text(text):
    return build_likelihood(parse(text))
