"""Exception hierarchy.

``InputError`` covers bad caller input (exit status 2 on the command line),
``NumericalError`` covers failures inside a computation (exit status 3).
"""


class BjorthoError(Exception):
    pass


class InputError(BjorthoError, ValueError):
    pass


class ZeroOperatorError(InputError):
    """The operator is identically zero, so every unit vector attains its norm."""


class NumericalError(BjorthoError, ArithmeticError):
    pass


class ConvergenceError(NumericalError):
    pass
