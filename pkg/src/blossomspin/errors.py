class NumericalError(ArithmeticError):
    """A numerical routine failed to meet its accuracy contract.

    ``residual`` carries the offending error measure when one is available.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
