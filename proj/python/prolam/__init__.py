"""Finite standard model of the simply typed lambda-calculus.

Interpretation at every base cardinality, definability, regular languages
of terms, profinite approximants with naturality/parametricity checking,
and the Church-encoding bridge to finite automata.  Structured values are
exchanged as the same JSON strings the command-line tool emits.
"""

try:
    from ._prolam import *  # noqa: F401,F403  (installed layout)
    from ._prolam import __version__  # noqa: F401
except ImportError:  # in-tree build: extension sits on sys.path directly
    from _prolam import *  # noqa: F401,F403
    from _prolam import __version__  # noqa: F401
