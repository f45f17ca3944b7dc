"""Exception hierarchy shared by all engine modules."""


class WikiError(Exception):
    """Base class for every error raised by the engine."""


class InvalidCharacterError(WikiError):
    """A word form contains a character outside letters/digits/hyphens/blanks."""

    def __init__(self, surface, position, char):
        super().__init__(f"invalid character {char!r} at position {position} in {surface!r}")
        self.surface = surface
        self.position = position
        self.char = char


class ConflictError(WikiError):
    """A surface form is already taken by another word (or a reserved word)."""

    def __init__(self, surface, reason="surface form already in use"):
        super().__init__(f"{reason}: {surface!r}")
        self.surface = surface


class MissingFormError(WikiError):
    def __init__(self, category, form_role):
        super().__init__(f"category {category} requires a {form_role!r} form")
        self.category = category
        self.form_role = form_role


class WrongCategoryError(WikiError):
    pass


class NotFoundError(WikiError):
    pass


class InUseError(WikiError):
    """A word cannot be removed because statements still use it."""

    def __init__(self, statement_ids):
        super().__init__(f"word used by statements {sorted(statement_ids)}")
        self.statement_ids = tuple(sorted(statement_ids))


class UnknownTokenError(WikiError):
    def __init__(self, surface, position):
        super().__init__(f"unknown word {surface!r} at token position {position}")
        self.surface = surface
        self.position = position


class SentenceSyntaxError(WikiError):
    """Parse failure; carries the menu of the longest valid prefix."""

    def __init__(self, position, expected):
        super().__init__(f"unexpected token at position {position}")
        self.position = position
        self.expected = expected


class AmbiguityError(WikiError):
    """A token sequence has more than one parse tree (grammar bug guard)."""


class DeadEndError(WikiError):
    """A token prefix cannot be extended to any accepted sentence."""


class UnresolvedAnaphorError(WikiError):
    def __init__(self, position, surface):
        super().__init__(f"no antecedent for {surface!r} at token position {position}")
        self.position = position
        self.surface = surface


class InaccessibleAntecedentError(WikiError):
    def __init__(self, position, surface):
        super().__init__(
            f"antecedent for {surface!r} at token position {position} is "
            "inside an inaccessible context"
        )
        self.position = position
        self.surface = surface


class UnsupportedQuestionError(WikiError):
    pass


class ResourceLimitError(WikiError):
    """Tableau node-expansion cap exceeded."""


class InconsistentKbError(WikiError):
    pass


class UnknownIndividualError(WikiError):
    pass


class UnknownWordError(WikiError):
    pass


class TooLargeError(WikiError):
    """Finite-model search rejected an oversized signature or domain."""


class CorruptFileError(WikiError):
    def __init__(self, path, line_number, reason=""):
        detail = f": {reason}" if reason else ""
        super().__init__(f"{path}:{line_number}: corrupt knowledge-base file{detail}")
        self.path = str(path)
        self.line_number = line_number
        self.reason = reason
