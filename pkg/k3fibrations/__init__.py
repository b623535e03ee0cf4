# -*- coding: utf-8 -*-
# MIT License
#
# Copyright (c) 2024 The k3fibrations developers
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
"""Exact Weierstrass models of the Jacobian elliptic fibrations on
H + E7 + E7 lattice polarized K3 surfaces."""
__version__ = "0.1.0"

from .__main__ import FibrationRunner, get_fibration
from .models import fibrations  # noqa: F401, RUF100
from .models.fibrations import (FibrationClass, Locus, build, locus_point,
                                reproduce_table, specialize)
from .models.heterotic import classify_branch, detect_loci
from .models.identities import run_suite
from .models.moduli import InvariantPoint, ParamPoint, invariants
from .models.weierstrass import FiberConfig, WModel, classify_fibration

__all__ = ["FibrationRunner",
           "get_fibration",
           "FibrationClass",
           "Locus",
           "build",
           "locus_point",
           "specialize",
           "reproduce_table",
           "classify_fibration",
           "classify_branch",
           "detect_loci",
           "run_suite",
           "invariants",
           "InvariantPoint",
           "ParamPoint",
           "FiberConfig",
           "WModel", ]
