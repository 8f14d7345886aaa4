"""
fnlie

Exact Frölicher-Nijenhuis calculus for tangent valued forms, and the
classification of Hermitian tangent valued forms on a complex line bundle.
"""

__version__ = "0.1.0"

from .classify import HermitianPair, h_map, j_map, phi_bracket
from .connection import Connection, HermitianConnection, curvature
from .dsl import ModelFile, evaluate, format_model, load_model, parse_model
from .errors import FnlieError
from .exterior import Form, TangentValuedForm, fn_bracket
from .models import Outcome, Report
from .qbundle import ProjTVF, QChart
from .reporters import generate_report
from .suites import run_suite

__all__ = [
    'HermitianPair',
    'h_map',
    'j_map',
    'phi_bracket',
    'Connection',
    'HermitianConnection',
    'curvature',
    'ModelFile',
    'evaluate',
    'format_model',
    'load_model',
    'parse_model',
    'FnlieError',
    'Form',
    'TangentValuedForm',
    'fn_bracket',
    'Outcome',
    'Report',
    'ProjTVF',
    'QChart',
    'generate_report',
    'run_suite',
]
