# gslice/core/errors.py
from typing import Optional


class GslError(Exception):
    """Base error; carries the process exit code and a human readable detail."""

    exit_code = 2

    def __init__(self, detail: str, exit_code: Optional[int] = None):
        super().__init__(detail)
        self.detail = detail
        if exit_code is not None:
            self.exit_code = exit_code

    def __str__(self) -> str:
        return self.detail


class PolyParseError(GslError):
    def __init__(self, detail: str, position: int):
        super().__init__(f"{detail} at position {position}")
        self.position = position


class UnknownVariableError(GslError):
    def __init__(self, name: str, position: Optional[int] = None):
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"unknown variable {name!r}{where}")
        self.name = name
        self.position = position


class RingMismatchError(GslError):
    pass


class NotHomogeneousError(GslError):
    pass


class InvalidModulusError(GslError):
    pass


class DivisionError(GslError):
    pass


class InconsistentComponentError(GslError):
    pass


class DuplicateComponentError(GslError):
    pass


class RankDeficientError(GslError):
    pass


class ShapeError(GslError):
    pass


class DegreeConditionError(GslError):
    pass


class DegreeCapError(GslError):
    pass


class UnknownModelError(GslError):
    pass


class UnknownCheckError(GslError):
    pass


class SpecFileError(GslError):
    pass


class ConfigError(GslError):
    pass
