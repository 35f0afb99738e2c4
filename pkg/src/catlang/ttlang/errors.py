from ..results import CatlangError

NOT_A_SECTION = "NotASection"
FORMER_UNAVAILABLE = "FormerUnavailable"
TYPE_MISMATCH = "TypeMismatch"


class TTError(CatlangError):
    pass


class TTSyntaxError(TTError):
    def __init__(self, line, col, expected, found=None):
        self.line, self.col, self.expected, self.found = line, col, expected, found
        msg = f"{line}:{col}: expected {expected}"
        if found is not None:
            msg += f", found {found!r}"
        super().__init__(msg)


class UnboundVariable(TTError):
    def __init__(self, name, pos=None, detail=""):
        self.name, self.pos = name, pos
        where = f"{pos[0]}:{pos[1]}: " if pos else ""
        super().__init__(f"{where}unbound name {name!r}" + (f" ({detail})" if detail else ""))


class TTTypeError(TTError):
    """A declaration that does not interpret; ``kind`` is one of
    ``NotASection``, ``FormerUnavailable`` or ``TypeMismatch``."""

    def __init__(self, kind, message, pos=None, decl=None):
        self.kind, self.pos, self.decl = kind, pos, decl
        where = f"{pos[0]}:{pos[1]}: " if pos else ""
        super().__init__(f"{where}{kind}: {message}")
