"""Breadth-first decoding of K-expressions and protected evaluation.

The coding region of a gene is read left to right; position 0 is the root and
every function claims the next unclaimed positions as its children, exactly in
the order the symbols appear.  The scan stops once all open slots are filled,
so a gene usually expresses only a prefix of head+tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .genome import DIGIT_VALUES, RNC_TERMINAL, Chromosome, ConstantSet, Gene, SymbolSet

MIN_DENOMINATOR = 1e-12
MAX_EXP_ARG = 700.0


@dataclass(frozen=True)
class Node:
    symbol: str
    arity: int
    children: tuple["Node", ...] = ()
    # ordinal of this '?' among expressed '?' terminals, None elsewhere
    rnc_ordinal: int | None = None


def protected_apply(op: str, args) -> float:
    """One protected operator application; never raises on float inputs."""
    if op == "+":
        return args[0] + args[1]
    if op == "-":
        return args[0] - args[1]
    if op == "*":
        return args[0] * args[1]
    if op == "/":
        if abs(args[1]) < MIN_DENOMINATOR:
            return 1.0
        return args[0] / args[1]
    x = args[0]
    if op == "S":
        return math.sin(x) if math.isfinite(x) else float("nan")
    if op == "C":
        return math.cos(x) if math.isfinite(x) else float("nan")
    if op == "Q":
        return math.sqrt(abs(x))
    if op == "E":
        return math.exp(min(x, MAX_EXP_ARG))
    raise ValueError(f"unknown operator {op!r}")


def _child_starts(seq, arity) -> list[int]:
    """First-child index for every expressed position; length = expressed size."""
    starts: list[int] = []
    total = 1
    i = 0
    while i < total:
        starts.append(total)
        total += arity.get(seq[i], 0)
        i += 1
    return starts


def expressed_length(gene: Gene, symbols: SymbolSet) -> int:
    return len(_child_starts(gene.coding, symbols.arity))


def build_tree(gene: Gene, symbols: SymbolSet) -> Node:
    """Expression tree of the expressed region; the gene suffix is ignored."""
    seq = gene.coding
    starts = _child_starts(seq, symbols.arity)
    n = len(starts)
    ordinals: dict[int, int] = {}
    for i in range(n):
        if seq[i] == RNC_TERMINAL:
            ordinals[i] = len(ordinals)
    nodes: list[Node | None] = [None] * n
    for i in range(n - 1, -1, -1):
        sym = seq[i]
        ar = symbols.arity.get(sym, 0)
        first = starts[i]
        nodes[i] = Node(sym, ar, tuple(nodes[first:first + ar]), ordinals.get(i))
    return nodes[0]


def eval_ordinary(gene: Gene, symbols: SymbolSet, constants: ConstantSet) -> float:
    """Value of one ordinary gene; the k-th expressed '?' reads dc[k]."""
    seq = gene.coding
    arity = symbols.arity
    starts = _child_starts(seq, arity)
    n = len(starts)
    values = [0.0] * n
    seen_rnc = 0
    rnc_of: dict[int, int] = {}
    for i in range(n):
        if seq[i] == RNC_TERMINAL:
            rnc_of[i] = seen_rnc
            seen_rnc += 1
    for i in range(n - 1, -1, -1):
        sym = seq[i]
        ar = arity.get(sym, 0)
        if ar == 0:
            if sym == RNC_TERMINAL:
                letter = gene.dc[rnc_of[i]]
                values[i] = constants.values[symbols.dc_index[letter]]
            else:
                values[i] = DIGIT_VALUES[sym]
        else:
            first = starts[i]
            values[i] = protected_apply(sym, values[first:first + ar])
    return values[0]


def eval_homeotic(gene: Gene, symbols: SymbolSet, ordinary_values) -> float:
    """Value of one homeotic gene given the ordinary genes' values."""
    seq = gene.coding
    arity = symbols.arity
    starts = _child_starts(seq, arity)
    n = len(starts)
    values = [0.0] * n
    for i in range(n - 1, -1, -1):
        sym = seq[i]
        ar = arity.get(sym, 0)
        if ar == 0:
            values[i] = ordinary_values[int(sym[1:])]
        else:
            first = starts[i]
            values[i] = protected_apply(sym, values[first:first + ar])
    return values[0]


def eval_chromosome(chromosome: Chromosome, symbols: SymbolSet, constants: ConstantSet) -> tuple[float, ...]:
    """Candidate point: one coordinate per homeotic gene."""
    ordinary_values = [eval_ordinary(g, symbols, constants) for g in chromosome.ordinary]
    return tuple(eval_homeotic(g, symbols, ordinary_values) for g in chromosome.homeotic)
