"""Exception hierarchy shared by every permstats module.

All errors derive from ValueError so callers that only know about bad input
(the CLI, the verify runner) can catch one type.
"""


class PermStatsError(ValueError):
    """Base class for all library errors."""


class DuplicateLetter(PermStatsError):
    def __init__(self, letter: int):
        self.letter = letter
        super().__init__(f"letter {letter} occurs more than once")


class InvalidPermutation(PermStatsError):
    pass


class InvalidOccurrence(PermStatsError):
    pass


class UnsupportedBarredPattern(PermStatsError):
    pass


class ParseError(PermStatsError):
    """Text did not conform to a notation grammar.

    offset is a byte offset into the input; -1 means the input ended early.
    """

    def __init__(self, offset: int, reason: str, text: str = ""):
        self.offset = offset
        self.reason = reason
        self.text = text
        where = "end of input" if offset < 0 else f"offset {offset}"
        token = ""
        if text and 0 <= offset < len(text):
            token = f" near {text[offset:offset + 8]!r}"
        super().__init__(f"parse error at {where}{token}: {reason}")


class DomainError(PermStatsError):
    pass


class NonIntegerTerm(PermStatsError):
    pass


class NotInClass(PermStatsError):
    pass


class NotInSourceClass(PermStatsError):
    pass


class InvalidPartition(PermStatsError):
    pass


class InvalidPath(PermStatsError):
    pass


class ModulusMismatch(PermStatsError):
    pass


class InvalidPattern(PermStatsError):
    pass
