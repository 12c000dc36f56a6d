"""Exception types shared across the package."""


class FractureCatError(Exception):
    """Base class for all package errors."""


class CapExceeded(FractureCatError):
    """A search or enumeration proved it would exceed its configured cap."""

    def __init__(self, cap, context=""):
        self.cap = cap
        self.context = context
        super().__init__(f"cap exceeded ({cap}){': ' + context if context else ''}")


class UnknownObject(FractureCatError):
    pass


class ShapeMismatch(FractureCatError):
    pass


class MiddleMismatch(FractureCatError):
    """Profunctor composition with non-matching middle category."""


class NotLocallyCartesian(FractureCatError):
    pass


class NonFunctorialAction(FractureCatError):
    """No strictly functorial choice of automorphism transports exists."""

    def __init__(self, obstruction):
        self.obstruction = obstruction
        super().__init__(f"no strictly functorial transport choice: {obstruction}")


class IncoherentDiagram(FractureCatError):
    """A lax diagram produced a non-associative composition table."""


class ParseError(FractureCatError):
    def __init__(self, line, col, message):
        self.line = line
        self.col = col
        super().__init__(f"{line}:{col}: {message}")


class UnresolvedReference(FractureCatError):
    def __init__(self, name, line=None, col=None):
        self.name = name
        self.line = line
        self.col = col
        pos = f"{line}:{col}: " if line is not None else ""
        super().__init__(f"{pos}unresolved reference '{name}'")


class DocumentValidationError(FractureCatError):
    """Declared data failed the owning module's validation."""

    def __init__(self, name, violations):
        self.name = name
        self.violations = list(violations)
        super().__init__(f"'{name}' invalid: " + "; ".join(self.violations))


class ClosureExceeded(FractureCatError):
    def __init__(self, max_morphisms):
        self.max_morphisms = max_morphisms
        super().__init__(f"generator closure did not stay within {max_morphisms} morphisms")


class UnknownTheorem(FractureCatError):
    pass
