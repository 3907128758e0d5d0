"""Python access to the ocat checkers.

Category arguments are DSL source text. Checker results come back as the
report dictionaries the command-line tool prints.
"""

import json

from . import _ocat
from ._ocat import DslError, __version__, canonical, classify, diff_dim, jet_dim, pair_degree

__all__ = [
    "DslError",
    "__version__",
    "canonical",
    "check_category",
    "check_involutive",
    "classify",
    "diff_dim",
    "jet_dim",
    "pair_degree",
    "run",
    "spencer_cohomology",
    "vinogradov",
]


def _rows(relations):
    return [[str(x) for x in row] for row in relations]


def run(*args):
    """Run a command line in-process: returns (exit code, document, stderr).

    The document is decoded JSON, or the raw text for `print`.
    """
    code, out, err = _ocat.cli([str(a) for a in args])
    try:
        doc = json.loads(out)
    except ValueError:
        doc = out
    return code, doc, err


def check_category(text, name="", weak=False):
    return json.loads(_ocat.check_category(text, name, weak))


def spencer_cohomology(n, k, q, relations, r):
    return _ocat.spencer_cohomology(n, k, q, _rows(relations), r)


def check_involutive(n, k, q, relations, r_max=4):
    return json.loads(_ocat.check_involutive(n, k, q, _rows(relations), r_max))


def vinogradov(m, copies, s):
    return json.loads(_ocat.vinogradov(m, copies, s))
