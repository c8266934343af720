"""
Parsing of lattice specs and vector arguments.

lattice spec grammar:

    spec  := term ('+' term)* | path to a JSON lattice file
    term  := 'e8' | 'diag:' N | 'gamma:' N

    parse_lattice_spec('e8+diag:2')       // rank 10 lattice
    parse_vector('1,0,-1')                 // LatticeVector([1, 0, -1])
    parse_ambient('1/2,1/2,1/2,1/2')       // AmbientVector with doubled coordinates (1, 1, 1, 1)
"""

import os
import re
from fractions import Fraction

from . import lattice
from .exceptions import LatticeParseException


TERM_RE = re.compile(r'^\s*(?:(?P<e8>e8)|(?P<family>diag|gamma):(?P<n>\d+))\s*$')

INTEGER_RE = re.compile(r'^\s*[-+]?\d+\s*$')

RATIONAL_RE = re.compile(r'^\s*[-+]?\d+(?:/\d+|\.\d+)?\s*$')

CONSTRUCTORS = {
    'diag': lattice.diagonal,
    'gamma': lattice.gamma
}


def is_lattice_file(spec):
    return spec.endswith('.json') or os.path.sep in spec or os.path.exists(spec)


def parse_term(term, position=0):
    match = TERM_RE.match(term)
    if not match:
        raise LatticeParseException("Unknown lattice term '{}'".format(term.strip()), position)
    if match.group('e8'):
        return lattice.e8()
    return CONSTRUCTORS[match.group('family')](int(match.group('n')))


def parse_lattice_spec(spec):
    """
    :param spec: {string} A lattice expression or a path to a lattice file
    :return: {lattice.Lattice} Sums are taken left to right
    """
    if is_lattice_file(spec):
        try:
            return lattice.load_lattice(spec)
        except (IOError, OSError) as e:
            raise LatticeParseException("Cannot read lattice file '{}': {}".format(spec, e.strerror or e)) from e
    terms = []
    position = 0
    for term in spec.split('+'):
        terms.append(parse_term(term, position))
        position += len(term) + 1
    result = lattice.direct_sum_many(terms)
    result.name = spec.replace(' ', '')
    return result


def _split(text):
    position = 0
    for token in text.split(','):
        yield token, position
        position += len(token) + 1


def parse_vector(text, cls=lattice.LatticeVector):
    """
    Comma separated integers
    :param cls: {type} LatticeVector or DualVector
    """
    values = []
    for token, position in _split(text):
        if not INTEGER_RE.match(token):
            raise LatticeParseException("Expected an integer, got '{}'".format(token.strip()), position)
        values.append(int(token))
    return cls(values)


def parse_dual(text):
    return parse_vector(text, lattice.DualVector)


def parse_ambient(text):
    """
    Comma separated ambient coordinates; half-integers may be written 1/2 or 0.5
    :return: {lattice.AmbientVector}
    """
    values = []
    for token, position in _split(text):
        if not RATIONAL_RE.match(token):
            raise LatticeParseException("Expected a coordinate, got '{}'".format(token.strip()), position)
        value = Fraction(token.strip())
        if (2 * value).denominator != 1:
            raise LatticeParseException("Coordinate '{}' is not a half-integer".format(token.strip()), position)
        values.append(value)
    return lattice.AmbientVector.from_ambient(values)
