# -*- coding: utf-8 -*-
#
# mavendiversity -- Diversity metrics for versioned dependency graphs
# Copyright (C) 2020 the mavendiversity contributors.
#
# This file is part of mavendiversity.
#
# Permission is hereby granted, free of charge, to any person obtaining a copy
# of this software and associated documentation files (the "Software"), to deal
# in the Software without restriction, including without limitation the rights
# to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
# copies of the Software, and to permit persons to whom the Software is
# furnished to do so, subject to the following conditions:
#
# The above copyright notice and this permission notice shall be included in
# all copies or substantial portions of the Software.
#
# THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
# IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
# FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
# AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
# LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
# OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
# SOFTWARE.
#
# For information on the complete list of contributors to the
# mavendiversity library, see: <http://mavendiversity.readthedocs.io/>
#

"""Error-handling facilities."""

from collections import namedtuple
from typing import List

from .utils import location_in_input


class DiversityError(Exception):
    """Root of all errors raised on purpose by mavendiversity."""

    pass


class ConfigError(DiversityError):
    """Exception raised when the run configuration is invalid."""

    pass


class DataError(DiversityError):
    """Exception raised when the input records cannot be turned into a graph."""

    pass


class VersionParseError(DataError, ValueError):
    """Exception raised when a version string has no tokens."""

    pass


class UnknownLibraryError(DiversityError, KeyError):
    """Exception raised when looking up a library that is not in the graph."""

    def __str__(self):
        # KeyError quotes its argument, we want the plain message
        return str(self.args[0]) if self.args else ""


class DomainError(DiversityError, ValueError):
    """Exception raised when an operation is applied outside its domain."""

    pass


class ConvergenceError(DiversityError):
    """Exception raised when a fixed-point iteration does not converge.

    Attributes
    ----------
    residual : float
        Residual of the last sweep.
    iterations : int
        Number of sweeps performed.
    """

    def __init__(self, message: str, *, residual: float, iterations: int):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class DivergenceError(ConvergenceError):
    """Exception raised when the literal popularity recurrence blows up."""

    pass


class Error(namedtuple("Error", ["address", "message"])):
    """Detailed error reporting for input records and configuration keys.

    Attributes
    ----------
    address : Tuple
         Where the offending element lives: ``(path, line)`` for records,
         a tuple of keys for configuration values.
    message : str
         The error message.
    """

    __slots__ = ()

    def __new__(cls, address=(), message=""):
        return super(Error, cls).__new__(cls, address, message)

    def __repr__(self):
        msg = f"{self.message:s}"
        if self.address != ():
            msg = f"At {location_in_input(address=self.address):s}:\n  {msg:s}"
        return "- " + msg

    __str__ = __repr__


def collate_errors(*, when: str, errors: List[Error]) -> str:
    """Collate a list of error into an informative message.

    Parameters
    ----------
    when: str
        When the error occurred.
    errors: List[Error]
        List of errors.

    Returns
    -------
    msg: str
        An error message with details about where in the input the error
        arose and what the error is. For example::

            Errors occurred when reading records:
            - At toy.ndjson, line 3:
              Duplicate coordinate 'org.example:a:1.0'.
            - At toy.ndjson, line 7:
              Missing field 'released'.
    """
    plural = "s" if len(errors) > 1 else ""
    preamble = f"\nError{plural:s} occurred when {when:s}:"
    msgs = [preamble] + [f"{e}" for e in errors]

    return "\n".join(msgs)
