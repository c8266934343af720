class HlatException(Exception):
    """
    Base class for every error raised by hlat
    """


class LatticeException(HlatException):
    """
    Raised when a lattice or a vector in it is malformed
    """


class NotSymmetricException(LatticeException):
    """
    Raised when a Gram matrix is not square and symmetric
    """


class NotDefiniteException(LatticeException):
    """
    Raised when a Gram matrix has a leading principal minor <= 0
    """


class BadRankException(LatticeException):
    """
    Raised when a named lattice is requested with an impossible rank
    """


class SignMismatchException(LatticeException):
    """
    Raised when combining lattices with different sign conventions
    """


class DimensionMismatchException(LatticeException):
    """
    Raised when a vector does not have the rank of its lattice
    """


class NotInLatticeException(LatticeException):
    """
    Raised when an ambient vector is not a point of the lattice
    """


class NotUnimodularException(LatticeException):
    """
    Raised when a unimodular lattice is required
    """


class RankTooLargeException(HlatException):
    """
    Raised when a lattice exceeds the configured rank guard
    """


class BudgetExceededException(HlatException):
    """
    Raised when an enumeration visits more nodes than its budget allows
    """

    def __init__(self, message, nodes=None):
        super(BudgetExceededException, self).__init__(message)
        self.nodes = nodes


class ParityMismatchException(HlatException):
    """
    Raised when m and the norm of w have different parities
    """


class DegreeTooLargeException(HlatException):
    """
    Raised when a polynomial degree exceeds the configured maximum
    """


class CertificateException(HlatException):
    """
    Raised when a bound certificate does not verify
    """


class NotExtremalException(CertificateException):
    """
    Raised when a witness vector is not of minimal norm in its coset
    """


class EtaVanishesException(CertificateException):
    """
    Raised when the eta sum of a certificate is zero
    """


class CertificateFailedException(CertificateException):
    """
    Raised when a certified computation disagrees with its own bounds
    """


class KTooSmallException(HlatException):
    """
    Raised when a Brieskorn family index is below 2
    """


class NotExactException(HlatException):
    """
    Raised when a sequence of linear maps is not exact
    """


class LatticeParseException(HlatException):
    """
    Raised when a lattice spec, lattice file or vector argument cannot be parsed
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = '{} (at position {})'.format(message, position)
        super(LatticeParseException, self).__init__(message)
        self.position = position


class ConfigException(HlatException):
    """
    Raised when a configuration value is out of range
    """


class InvariantViolationException(HlatException):
    """
    Raised when an internal consistency check fails
    """
