class LiePeriodException(Exception):
    def __init__(self, message: str):
        self.message = message
        super().__init__(self.message)


class DomainException(LiePeriodException, ValueError):
    """An argument lies outside the domain where the formula is defined."""


class MixedDegreeException(DomainException):
    def __init__(self, degrees: set[int]):
        self.degrees = degrees
        super().__init__(f"Expected a homogeneous element, found word lengths {sorted(degrees)}")


class EliminationException(LiePeriodException):
    def __init__(self, row: int, col: int):
        self.row = row
        self.col = col
        super().__init__(f"Inexact division during fraction-free elimination at ({row}, {col})")
