"""Linear genomes for multicellular gene expression programming.

A chromosome carries two kinds of genes.  Ordinary genes have a head, a tail
and a Dc region; they decode to one real number each.  Homeotic genes have a
head and a tail only; their terminals are references to ordinary genes, and
each homeotic gene produces one coordinate of the candidate point.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass
from functools import lru_cache

FUNCTION_ARITIES = {
    "+": 2,
    "-": 2,
    "*": 2,
    "/": 2,
    "S": 1,  # sine
    "C": 1,  # cosine
    "Q": 1,  # square root of |x|
    "E": 1,  # exponential, clamped
}

BASE_OPERATORS = ("+", "-", "*", "/")

# 'a'..'j' stand for the integer literals 0..9.
DIGIT_TERMINALS = tuple(string.ascii_lowercase[:10])
DIGIT_VALUES = {symbol: float(i) for i, symbol in enumerate(DIGIT_TERMINALS)}

RNC_TERMINAL = "?"


def tail_length(head_len: int, max_arity: int) -> int:
    """Tail size that keeps any head expressible: h*(amax-1) + 1."""
    return head_len * (max_arity - 1) + 1


@lru_cache(maxsize=None)
def gene_references(n_ordinary: int) -> tuple[str, ...]:
    """Terminal symbols g0..g(n-1) used inside homeotic genes."""
    return tuple(f"g{i}" for i in range(n_ordinary))


class SymbolSet:
    """Alphabets for one problem: functions, terminals, Dc index letters."""

    def __init__(self, functions, terminals, dc_alphabet):
        functions = tuple(functions)
        self.functions = tuple(sym for sym, _ in functions)
        self.arity = {sym: ar for sym, ar in functions}
        self.terminals = tuple(terminals)
        self.dc_alphabet = tuple(dc_alphabet)
        if not functions:
            raise ValueError("need at least one function symbol")
        for sym, ar in functions:
            if ar < 1:
                raise ValueError(f"function {sym!r} must take arguments")
        if RNC_TERMINAL not in self.terminals:
            raise ValueError("terminal set must include '?'")
        f, t, d = set(self.functions), set(self.terminals), set(self.dc_alphabet)
        if f & t or f & d or t & d:
            raise ValueError("function, terminal and Dc alphabets must be disjoint")
        if len(f) != len(self.functions) or len(t) != len(self.terminals) or len(d) != len(self.dc_alphabet):
            raise ValueError("duplicate symbol in alphabet")
        self.max_arity = max(self.arity.values())
        self.dc_index = {sym: i for i, sym in enumerate(self.dc_alphabet)}

    @classmethod
    def create(cls, extra_operators=(), n_constants: int = 10) -> "SymbolSet":
        """Standard alphabets: four arithmetic ops plus per-problem unaries.

        Dc letters are drawn from A..Z skipping any letter that doubles as a
        function symbol, so the three alphabets stay disjoint.
        """
        functions = [(op, FUNCTION_ARITIES[op]) for op in BASE_OPERATORS]
        for op in extra_operators:
            if op not in FUNCTION_ARITIES:
                raise ValueError(f"unknown operator {op!r}")
            functions.append((op, FUNCTION_ARITIES[op]))
        used = {sym for sym, _ in functions}
        capitals = [c for c in string.ascii_uppercase if c not in used]
        if n_constants < 1 or n_constants > len(capitals):
            raise ValueError(f"n_constants must be in 1..{len(capitals)}")
        terminals = (RNC_TERMINAL,) + DIGIT_TERMINALS
        return cls(functions, terminals, capitals[:n_constants])


@dataclass(frozen=True)
class GeneLayout:
    """Structural sizes shared by every chromosome in a population."""

    ordinary_head_len: int = 6
    homeotic_head_len: int = 4
    n_ordinary: int = 2
    n_homeotic: int = 1
    max_arity: int = 2

    def __post_init__(self):
        for name in ("ordinary_head_len", "homeotic_head_len", "n_ordinary", "n_homeotic"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_arity < 1:
            raise ValueError("max_arity must be positive")

    @property
    def ordinary_tail_len(self) -> int:
        return tail_length(self.ordinary_head_len, self.max_arity)

    @property
    def homeotic_tail_len(self) -> int:
        return tail_length(self.homeotic_head_len, self.max_arity)

    @property
    def dc_len(self) -> int:
        # one Dc slot per possible '?' in the expressed region
        return self.ordinary_tail_len

    @property
    def ordinary_gene_len(self) -> int:
        return self.ordinary_head_len + self.ordinary_tail_len + self.dc_len

    @property
    def homeotic_gene_len(self) -> int:
        return self.homeotic_head_len + self.homeotic_tail_len

    @property
    def total_len(self) -> int:
        return self.n_ordinary * self.ordinary_gene_len + self.n_homeotic * self.homeotic_gene_len


@dataclass(frozen=True)
class Gene:
    head: tuple[str, ...]
    tail: tuple[str, ...]
    dc: tuple[str, ...] = ()

    @classmethod
    def from_strings(cls, head: str, tail: str, dc: str = "") -> "Gene":
        return cls(tuple(head), tuple(tail), tuple(dc))

    @property
    def coding(self) -> tuple[str, ...]:
        return self.head + self.tail


@dataclass(frozen=True)
class Chromosome:
    ordinary: tuple[Gene, ...]
    homeotic: tuple[Gene, ...]


@dataclass(frozen=True)
class ConstantSet:
    """Shared pool of random numerical constants indexed by Dc letters."""

    values: tuple[float, ...]
    lower: float
    upper: float


def random_constant_set(n: int, lower: float, upper: float, rng: random.Random) -> ConstantSet:
    if not lower < upper:
        raise ValueError(f"empty constant range [{lower}, {upper})")
    return ConstantSet(tuple(rng.uniform(lower, upper) for _ in range(n)), lower, upper)


def position_alphabets(layout: GeneLayout, symbols: SymbolSet) -> tuple[tuple[str, ...], ...]:
    """Legal symbols for every slot of the flattened chromosome, in order."""
    refs = gene_references(layout.n_ordinary)
    ordinary_head = symbols.functions + symbols.terminals
    homeotic_head = symbols.functions + refs
    table: list[tuple[str, ...]] = []
    for _ in range(layout.n_ordinary):
        table += [ordinary_head] * layout.ordinary_head_len
        table += [symbols.terminals] * layout.ordinary_tail_len
        table += [symbols.dc_alphabet] * layout.dc_len
    for _ in range(layout.n_homeotic):
        table += [homeotic_head] * layout.homeotic_head_len
        table += [refs] * layout.homeotic_tail_len
    return tuple(table)


def random_chromosome(layout: GeneLayout, symbols: SymbolSet, rng: random.Random) -> Chromosome:
    """Uniform draw per position from that position's legal alphabet."""
    refs = gene_references(layout.n_ordinary)
    ordinary_head = symbols.functions + symbols.terminals
    homeotic_head = symbols.functions + refs
    ordinary = tuple(
        Gene(
            tuple(rng.choices(ordinary_head, k=layout.ordinary_head_len)),
            tuple(rng.choices(symbols.terminals, k=layout.ordinary_tail_len)),
            tuple(rng.choices(symbols.dc_alphabet, k=layout.dc_len)),
        )
        for _ in range(layout.n_ordinary)
    )
    homeotic = tuple(
        Gene(
            tuple(rng.choices(homeotic_head, k=layout.homeotic_head_len)),
            tuple(rng.choices(refs, k=layout.homeotic_tail_len)),
        )
        for _ in range(layout.n_homeotic)
    )
    return Chromosome(ordinary, homeotic)


def flatten(chromosome: Chromosome) -> list[str]:
    flat: list[str] = []
    for gene in chromosome.ordinary:
        flat += gene.head
        flat += gene.tail
        flat += gene.dc
    for gene in chromosome.homeotic:
        flat += gene.head
        flat += gene.tail
    return flat


def rebuild(flat, layout: GeneLayout) -> Chromosome:
    """Inverse of flatten for a given layout."""
    if len(flat) != layout.total_len:
        raise ValueError(f"expected {layout.total_len} symbols, got {len(flat)}")
    pos = 0

    def take(n: int) -> tuple[str, ...]:
        nonlocal pos
        chunk = tuple(flat[pos:pos + n])
        pos += n
        return chunk

    ordinary = tuple(
        Gene(take(layout.ordinary_head_len), take(layout.ordinary_tail_len), take(layout.dc_len))
        for _ in range(layout.n_ordinary)
    )
    homeotic = tuple(
        Gene(take(layout.homeotic_head_len), take(layout.homeotic_tail_len))
        for _ in range(layout.n_homeotic)
    )
    return Chromosome(ordinary, homeotic)


def validate(chromosome: Chromosome, layout: GeneLayout, symbols: SymbolSet) -> list[str]:
    """Structural check; returns human-readable violations, empty when valid."""
    problems: list[str] = []
    refs = set(gene_references(layout.n_ordinary))
    functions = set(symbols.functions)
    terminals = set(symbols.terminals)
    dc_letters = set(symbols.dc_alphabet)
    ordinary_head = functions | terminals
    homeotic_head = functions | refs

    if len(chromosome.ordinary) != layout.n_ordinary:
        problems.append(f"expected {layout.n_ordinary} ordinary genes, got {len(chromosome.ordinary)}")
    if len(chromosome.homeotic) != layout.n_homeotic:
        problems.append(f"expected {layout.n_homeotic} homeotic genes, got {len(chromosome.homeotic)}")

    def check_region(region, where, allowed, expected_len):
        if len(region) != expected_len:
            problems.append(f"{where}: expected {expected_len} symbols, got {len(region)}")
        if allowed.issuperset(region):
            return
        for i, sym in enumerate(region):
            if sym not in allowed:
                problems.append(f"{where}, position {i}: symbol {sym!r} not allowed")

    for g, gene in enumerate(chromosome.ordinary):
        check_region(gene.head, f"ordinary gene {g} head", ordinary_head, layout.ordinary_head_len)
        check_region(gene.tail, f"ordinary gene {g} tail", terminals, layout.ordinary_tail_len)
        check_region(gene.dc, f"ordinary gene {g} dc", dc_letters, layout.dc_len)
    for g, gene in enumerate(chromosome.homeotic):
        check_region(gene.head, f"homeotic gene {g} head", homeotic_head, layout.homeotic_head_len)
        check_region(gene.tail, f"homeotic gene {g} tail", refs, layout.homeotic_tail_len)
        if gene.dc:
            problems.append(f"homeotic gene {g}: unexpected dc region")
    return problems
