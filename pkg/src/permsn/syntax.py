r"""Concrete syntax: parsing and printing.

Grammar::

    term ::= lam | app
    lam  ::= ("\" | "u03bb") ident "." term
    app  ::= atom atom*            (left associative)
    atom ::= ident | "(" term ")"

Application binds tighter than a lambda body, so ``\x. x y`` is
``\x. (x y)``.  Free names are mapped to slots in first-occurrence order
unless an explicit name table is supplied; ``parse_with_names`` returns the
table so printing can reuse the original names.
"""

import re

from permsn.terms import App, Lam, Var

_TOKEN = re.compile(r"\s*(\\|λ|\.|\(|\)|[a-zA-Z][a-zA-Z0-9_']*)")

_BOUND_POOL = ("x", "y", "z", "u", "v", "w")
_FREE_POOL = ("a", "b", "c", "d", "e", "f", "g", "h")


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ParseError("unexpected character %r" % rest[0],
                             len(text) - len(rest))
        tokens.append((m.group(1), m.start(1)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, length, free_names):
        self.tokens = tokens
        self.length = length
        self.pos = 0
        self.free = list(free_names)

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][0]
        return None

    def here(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return self.length

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok[0]

    def expect(self, tok):
        if self.peek() != tok:
            raise ParseError("expected %r" % tok, self.here())
        self.next()

    def term(self, scope):
        if self.peek() in ("\\", "λ"):
            self.next()
            name = self.peek()
            if name is None or name in ("\\", "λ", ".", "(", ")"):
                raise ParseError("expected a binder name", self.here())
            self.next()
            self.expect(".")
            body = self.term([name] + scope)
            return Lam(body)
        return self.app(scope)

    def app(self, scope):
        t = self.atom(scope)
        while self.peek() is not None and self.peek() not in (")", "."):
            if self.peek() in ("\\", "λ"):
                # a lambda in argument position must be parenthesized, but a
                # trailing lambda extends the application per the grammar
                arg = self.term(scope)
            else:
                arg = self.atom(scope)
            t = App(t, arg)
        return t

    def atom(self, scope):
        tok = self.peek()
        if tok == "(":
            self.next()
            t = self.term(scope)
            self.expect(")")
            return t
        if tok is None or tok in (")", ".", "\\", "λ"):
            raise ParseError("expected a term", self.here())
        self.next()
        if tok in scope:
            return Var(scope.index(tok))
        if tok in self.free:
            return Var(len(scope) + self.free.index(tok))
        self.free.append(tok)
        return Var(len(scope) + len(self.free) - 1)


def parse_with_names(text, free_names=()):
    """Parse text; returns (term, free-name table).

    Names listed in free_names keep their slot; new free names are appended
    in first-occurrence order.
    """
    parser = _Parser(_tokenize(text), len(text), free_names)
    t = parser.term([])
    if parser.peek() is not None:
        raise ParseError("trailing input", parser.here())
    return t, tuple(parser.free)


def parse(text, free_names=()):
    return parse_with_names(text, free_names)[0]


def free_name(i):
    """Stable default name for free slot i."""
    if i < len(_FREE_POOL):
        return _FREE_POOL[i]
    return "%s%d" % (_FREE_POOL[i % len(_FREE_POOL)], i // len(_FREE_POOL))


def default_free_names(t):
    """Default name table covering every free slot of t."""
    from permsn.terms import free_vars

    fv = free_vars(t)
    top = max(fv) + 1 if fv else 0
    return tuple(free_name(i) for i in range(top))


def pretty(t, free_names=()):
    """Canonical text for t; parse(pretty(t), table) reproduces t.

    Free slot i prints as free_names[i] when available, else as a stable
    default.  Binder names are fresh with respect to every name in scope.
    """
    taken = set(free_names)
    for i in sorted(_collect_free(t, 0, set())):
        if i >= len(free_names):
            taken.add(free_name(i))

    def fresh(used):
        for name in _BOUND_POOL:
            if name not in used:
                return name
        n = 1
        while True:
            for base in _BOUND_POOL:
                name = "%s%d" % (base, n)
                if name not in used:
                    return name
            n += 1

    def name_of(i, scope):
        if i < len(scope):
            return scope[i]
        slot = i - len(scope)
        if slot < len(free_names):
            return free_names[slot]
        return free_name(slot)

    def go(t, scope, used):
        tag = t[0]
        if tag == 0:
            return name_of(t[1], scope)
        if tag == 1:
            name = fresh(used)
            return "\\%s. %s" % (name, go(t[1], [name] + scope, used | {name}))
        fun = go(t[1], scope, used)
        if t[1][0] == 1:
            fun = "(%s)" % fun
        arg = go(t[2], scope, used)
        if t[2][0] != 0:
            arg = "(%s)" % arg
        return "%s %s" % (fun, arg)

    return go(t, [], taken)


def pretty_in_scope(t, scope, free_names):
    """Mechanical printer with caller-controlled names.

    scope lists the names of the enclosing binders, innermost first; free
    slot i beyond the scope prints as free_names[i].  No freshening: the
    caller guarantees the names are distinct.
    """
    tag = t[0]
    if tag == 0:
        i = t[1]
        if i < len(scope):
            return scope[i]
        return free_names[i - len(scope)]
    if tag == 1:
        name = "b%d" % len(scope)
        return "\\%s. %s" % (name, pretty_in_scope(t[1], [name] + scope, free_names))
    fun = pretty_in_scope(t[1], scope, free_names)
    if t[1][0] == 1:
        fun = "(%s)" % fun
    arg = pretty_in_scope(t[2], scope, free_names)
    if t[2][0] != 0:
        arg = "(%s)" % arg
    return "%s %s" % (fun, arg)


def _collect_free(t, depth, out):
    tag = t[0]
    if tag == 0:
        if t[1] >= depth:
            out.add(t[1] - depth)
    elif tag == 1:
        _collect_free(t[1], depth + 1, out)
    else:
        _collect_free(t[1], depth, out)
        _collect_free(t[2], depth, out)
    return out
