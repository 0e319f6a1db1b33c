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

"""Atoms of the version-string grammar."""

from collections import namedtuple

import pyparsing as pp

NUMERIC = "numeric"
QUALIFIER = "qualifier"

SEPARATORS = ".-"
"""str: Characters that split a version string into tokens."""


class Token(namedtuple("Token", ["kind", "value"])):
    """One token of a version string.

    Attributes
    ----------
    kind : str
        Either ``numeric`` or ``qualifier``.
    value : Union[int, str]
        The integer value of a numeric token, the lowercase text of a qualifier.
    """

    __slots__ = ()

    def __str__(self):
        return f"{self.value}"


number_t = pp.Word(pp.nums).set_name("number")
number_t.set_parse_action(lambda token: Token(NUMERIC, int(token[0])))

qualifier_t = pp.Word(pp.printables, exclude_chars=SEPARATORS + pp.nums).set_name(
    "qualifier"
)
"""A qualifier is a run of printable characters that are neither digits nor
separators, hence letter/digit transitions split tokens."""
qualifier_t.set_parse_action(lambda token: Token(QUALIFIER, token[0].lower()))

separator_t = pp.Char(SEPARATORS).suppress()

version_t = pp.ZeroOrMore(number_t | qualifier_t | separator_t)
version_t.set_name("version")
