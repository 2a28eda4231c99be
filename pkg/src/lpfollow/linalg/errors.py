"""Failure modes shared by both kernel backends."""


class SingularFactorError(ValueError):
    """A QR factor came out numerically rank deficient.

    ``column`` is the zero-based index of the offending column of the
    factored matrix.
    """

    def __init__(self, column: int, message: str | None = None):
        self.column = column
        super().__init__(
            message
            or f"matrix is numerically rank deficient at column {column}"
        )


class SingularSystemError(ValueError):
    """A triangular solve met a zero or near-zero diagonal entry.

    ``index`` is the zero-based diagonal position that failed.
    """

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(
            message or f"triangular system is singular at diagonal {index}"
        )
