"""Process semantics of regular expressions.

Charts (process interpretations) of regular expressions, bisimilarity and
bisimulation collapse, loop existence and elimination (LEE and its layered
variant LLEE), expressibility with expression extraction, and a checker for
proofs in Milner's equational system.
"""

from .bisim import (
    BisimRelation,
    NotBisimilar,
    accepts,
    bisimilar,
    collapse,
    distinguishing_word,
    is_bisimulation,
    is_functional_bisim,
    isomorphic,
    lang_equiv,
)
from .chart import EXPRESSION_FIXTURES, Derivative, alphabet, chart, derivatives, step
from .express import ExpressibilityVerdict, ExtractionError, decide_expressible_us1f, extract
from .graph import (
    GraphFormatError,
    ProcessGraph,
    garbage_collect,
    has_infinite_trace,
    load,
    load_fixture,
    reachable,
    sccs,
    store,
    to_dot,
)
from .lee import (
    EliminationTrace,
    LoopCandidate,
    Violation,
    check_loop_graph,
    decide_lee,
    decide_llee,
    eliminate,
    eliminate_greedily,
    is_loop_graph,
    loop_candidates,
    maximal_outcomes,
)
from .mil import Equation, ProofError, ProofScript, ProofStep, check_proof, check_step, instantiate_axiom
from .regex import (
    ONE,
    ZERO,
    Atom,
    BinStar,
    FragmentReport,
    One,
    Prod,
    RegExp,
    RegexSyntaxError,
    Star,
    Sum,
    Zero,
    classify,
    parse,
    render,
    terminates,
)

__version__ = "0.1.0"
