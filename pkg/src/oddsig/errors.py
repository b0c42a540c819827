"""Exceptions shared across the package.

Input errors (bad documents, violated preconditions) derive from InputError;
resource limits derive from ResourceError. The CLI maps InputError to exit
code 2 and ResourceError to exit code 3.
"""


class OddsigError(Exception):
    pass


class InputError(OddsigError):
    pass


class ResourceError(OddsigError):
    pass


# exact arithmetic
class OrderMismatch(InputError):
    pass


class NotASubfield(InputError):
    pass


class InvalidExponent(InputError):
    pass


# polynomials
class VariableCountMismatch(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


class NotSquarefree(InputError):
    pass


# projective maps and groups
class ScalarMap(InputError):
    pass


class NonUnitScalar(InputError):
    pass


class NotAnAutomorphism(InputError):
    pass


class NotAnIsomorphism(InputError):
    pass


class BoundExceeded(ResourceError):
    pass


# ramification bookkeeping
class NonIntegerBranchCount(InputError):
    pass


class NonIntegerGenus(InputError):
    pass


class NegativeGenus(InputError):
    pass


class NonIntegerCount(InputError):
    pass


class GenusTooSmall(InputError):
    pass


class ShapeViolation(InputError):
    pass


class PropertyViolation(InputError):
    pass


class HypothesisViolation(InputError):
    pass


# descent
class DegenerateTriple(InputError):
    pass


class ImpossibleCase(InputError):
    pass


class CocycleFailure(OddsigError):
    pass


class ImageTooLarge(InputError):
    pass


# serialization
class ParseError(InputError):
    pass


class SchemaError(InputError):
    pass
