"""
Text notation for permutations, pattern sets, set partitions, Motzkin paths
and colored permutations.

One LALR grammar (lark) with a start rule per notation. The transformer returns
plain tuples/lists; the domain modules wrap them in their own types.

    342516                      contiguous, one digit per letter
    1,4,2,6,3,5,7,10,8,9        comma separated
    321; 231|(1,0)              pattern set with a mesh item
    1'2'43                      barred letters
    {{3,4},{2,7},{1,5,6}}       set partition
    HUUDHDHUHD                  Motzkin path
    r=2: 0,1,0 / 231            colored permutation
"""

from functools import lru_cache

from lark import Lark, Transformer, v_args
from lark.exceptions import (
    UnexpectedCharacters,
    UnexpectedEOF,
    UnexpectedInput,
    UnexpectedToken,
    VisitError,
)

from .errors import ParseError, PermStatsError

GRAMMAR = r"""
    pattern_set: [item (";" item)*]
    perm_text: [perm]
    partition: "{" [block ("," block)*] "}"
    path: STEP*
    colored: "r" "=" NUMBER ":" colors "/" perm

    item: perm [mesh]
    mesh: "|" box*
    box: "(" NUMBER "," NUMBER ")"

    perm: mark+                  -> perm_contiguous
        | mark ("," mark)+       -> perm_commas
    mark: NUMBER [BAR]

    block: "{" [NUMBER ("," NUMBER)*] "}"
    colors: NUMBER ("," NUMBER)*

    BAR: "'"
    STEP: /[UDH]/
    NUMBER: /[0-9]+/

    %import common.WS
    %ignore WS
"""

START_RULES = ["pattern_set", "perm_text", "partition", "path", "colored"]


@lru_cache(maxsize=1)
def _parser() -> Lark:
    return Lark(
        GRAMMAR,
        parser="lalr",
        start=START_RULES,
        propagate_positions=True,
        maybe_placeholders=True,
    )


@v_args(meta=True)
class _ToPrimitives(Transformer):
    """Turns parse trees into tuples.

    A permutation becomes (letters, barred_positions) with 1-based positions.
    """

    def __init__(self, text: str):
        super().__init__()
        self._text = text

    def _fail(self, meta, reason: str):
        offset = getattr(meta, "start_pos", -1)
        raise ParseError(offset if offset is not None else -1, reason, self._text)

    def mark(self, meta, children):
        digits = str(children[0])
        return digits, children[1] is not None

    def perm_contiguous(self, meta, children):
        letters = []
        barred = set()
        for digits, is_barred in children:
            letters.extend(int(d) for d in digits)
            if is_barred:
                barred.add(len(letters))
        return tuple(letters), frozenset(barred)

    def perm_commas(self, meta, children):
        letters = tuple(int(digits) for digits, _ in children)
        barred = frozenset(i for i, (_, is_barred) in enumerate(children, start=1) if is_barred)
        return letters, barred

    def box(self, meta, children):
        return int(children[0]), int(children[1])

    def mesh(self, meta, children):
        return tuple(children)

    def _check_permutation(self, meta, letters):
        if sorted(letters) != list(range(1, len(letters) + 1)):
            self._fail(meta, f"{','.join(map(str, letters))} is not a permutation of 1..{len(letters)}")

    def item(self, meta, children):
        (letters, barred), boxes = children
        self._check_permutation(meta, letters)
        if barred and boxes is not None:
            self._fail(meta, "a barred pattern cannot carry shaded boxes")
        k = len(letters)
        for i, j in boxes or ():
            if not (0 <= i <= k and 0 <= j <= k):
                self._fail(meta, f"box ({i},{j}) lies outside [0,{k}]^2")
        return letters, barred, boxes

    def pattern_set(self, meta, children):
        return [c for c in children if c is not None]

    def perm_text(self, meta, children):
        if children[0] is None:
            return ()
        letters, barred = children[0]
        if barred:
            self._fail(meta, "bars are only allowed in pattern sets")
        return letters

    def block(self, meta, children):
        return [int(c) for c in children if c is not None]

    def partition(self, meta, children):
        return [c for c in children if c is not None]

    def path(self, meta, children):
        return "".join(str(c) for c in children)

    def colors(self, meta, children):
        return tuple(int(c) for c in children)

    def colored(self, meta, children):
        modulus, colors, (letters, barred) = children
        if barred:
            self._fail(meta, "bars are not allowed in colored permutations")
        self._check_permutation(meta, letters)
        return int(modulus), colors, letters


def _describe(err: UnexpectedInput, text: str) -> ParseError:
    if isinstance(err, UnexpectedCharacters):
        return ParseError(err.pos_in_stream, f"unexpected character {text[err.pos_in_stream]!r}", text)
    if isinstance(err, UnexpectedToken):
        if err.token.type == "$END":
            return ParseError(-1, "unexpected end of input", text)
        expected = ", ".join(sorted(err.expected)[:6])
        return ParseError(
            err.token.start_pos if err.token.start_pos is not None else -1,
            f"unexpected token {str(err.token)!r} (expected {expected})",
            text,
        )
    if isinstance(err, UnexpectedEOF):
        return ParseError(-1, "unexpected end of input", text)
    return ParseError(-1, str(err), text)


def parse(text: str, start: str):
    """Parse ``text`` with the named start rule and return primitive values.

    Raises ParseError carrying a byte offset into ``text``.
    """
    if start not in START_RULES:
        raise ValueError(f"unknown notation {start!r}")
    try:
        tree = _parser().parse(text, start=start)
    except UnexpectedInput as err:
        raise _describe(err, text) from None
    try:
        return _ToPrimitives(text).transform(tree)
    except VisitError as err:
        if isinstance(err.orig_exc, PermStatsError):
            raise err.orig_exc from None
        raise
