"""Generational engine with diversity-driven fuzzy rate control.

Each generation reads population diversity, adapts the crossover, mutation
and constant-mutation rates, builds a temporary population from four operator
pipelines (crossover only, mutation only, and both orders of the two), then
fills the next generation by elitism plus tournaments over parents and all
offspring.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .bench import Problem
from .decode import eval_homeotic, eval_ordinary
from .fuzzy import (
    CONSTANT_MUTATION_RULES,
    CROSSOVER_RULES,
    MUTATION_RULES,
    MembershipFamily,
    Universe,
    infer_1d,
    infer_2d,
)
from .genome import (
    Chromosome,
    GeneLayout,
    SymbolSet,
    flatten,
    position_alphabets,
    random_chromosome,
    random_constant_set,
    rebuild,
)

# rates used while diversity sits below the fuzzy band
FIXED_CROSSOVER_RATE = 0.4
FIXED_MUTATION_RATE = 0.1
FUZZY_DIVERSITY_FLOOR = 0.6

# fixed-rate reference mode: crossover, mutation, constant mutation
BASELINE_RATES = (0.3, 0.2, 0.01)

DIVERSITY_UNIVERSE = Universe(0.6, 1.0)
CROSSOVER_UNIVERSE = Universe(0.1, 0.3)
MUTATION_UNIVERSE = Universe(0.05, 0.25)
CONSTANT_UNIVERSE = Universe(0.0, 0.5)


@dataclass(frozen=True)
class Individual:
    chromosome: Chromosome
    point: tuple[float, ...]
    fitness: float


@dataclass(frozen=True)
class Rates:
    p_c: float
    p_m: float
    r_c: float


@dataclass(frozen=True)
class DiversityReading:
    d: float
    f_best: float
    f_ave: float


@dataclass
class EngineConfig:
    pop_size: int = 100
    max_gen: int = 1000
    mutations_per_individual: int = 2
    mode: str = "adaptive"
    success_tol: float = 1e-6
    termination_tol: float | None = 1e-12  # None keeps every run at max_gen
    n_constants: int = 10
    ordinary_head_len: int = 6
    homeotic_head_len: int = 4
    n_ordinary_genes: int = 2

    def __post_init__(self):
        if self.pop_size < 2:
            raise ValueError("pop_size must be at least 2")
        if self.max_gen < 1:
            raise ValueError("max_gen must be positive")
        if self.mutations_per_individual < 1:
            raise ValueError("mutations_per_individual must be positive")
        if self.mode not in ("adaptive", "baseline"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.success_tol < 0.0:
            raise ValueError("success_tol must be non-negative")
        if self.termination_tol is not None and self.termination_tol < 0.0:
            raise ValueError("termination_tol must be non-negative")
        if self.n_constants < 1:
            raise ValueError("n_constants must be positive")
        if self.ordinary_head_len < 1 or self.homeotic_head_len < 1:
            raise ValueError("head lengths must be positive")
        if self.n_ordinary_genes < 1:
            raise ValueError("n_ordinary_genes must be positive")

    @property
    def elite_count(self) -> int:
        return max(1, round(0.01 * self.pop_size))

    def tournament_size(self, temp_size: int) -> int:
        return max(2, round(0.01 * temp_size))


@dataclass(frozen=True)
class TraceRow:
    generation: int
    best_fitness: float
    avg_fitness: float
    diversity_d: float
    p_c: float
    p_m: float
    r_c: float
    constant_reset: bool


@dataclass
class RunResult:
    problem: str
    seed: int
    best: Individual
    first_best_gen: int
    generations: int
    trace: list[TraceRow]
    temp_sizes: list[int]


class RateControllers:
    """The three Mamdani controllers over their fixed universes."""

    def __init__(self, max_gen: int):
        self.diversity = MembershipFamily(DIVERSITY_UNIVERSE)
        self.crossover = MembershipFamily(CROSSOVER_UNIVERSE)
        self.mutation = MembershipFamily(MUTATION_UNIVERSE)
        self.constant = MembershipFamily(CONSTANT_UNIVERSE)
        self.iteration = MembershipFamily(Universe(max_gen / 2.0, float(max_gen)))

    def crossover_rate(self, d: float) -> float:
        return infer_1d(CROSSOVER_RULES, self.diversity, self.crossover, d)

    def mutation_rate(self, d: float) -> float:
        return infer_1d(MUTATION_RULES, self.diversity, self.mutation, d)

    def constant_rate(self, gen: int, d: float) -> float:
        return infer_2d(CONSTANT_MUTATION_RULES, self.iteration, self.diversity,
                        self.constant, float(gen), d)


def diversity(population, direction: str) -> DiversityReading:
    """Best-to-average fitness ratio oriented so 1.0 means converged."""
    fits = [ind.fitness for ind in population if math.isfinite(ind.fitness)]
    if not fits:
        return DiversityReading(0.5, float("nan"), float("nan"))
    f_ave = sum(fits) / len(fits)
    if direction == "minimize":
        f_best = min(fits)
        num, den = f_best, f_ave
    else:
        f_best = max(fits)
        num, den = f_ave, f_best
    if num == den:
        d = 1.0
    elif den == 0.0:
        d = 0.0
    else:
        d = min(1.0, max(0.0, num / den))
    return DiversityReading(d, f_best, f_ave)


def adapt_rates(d: float, gen: int, cfg: EngineConfig, controllers: RateControllers) -> Rates:
    if cfg.mode == "baseline":
        return Rates(*BASELINE_RATES)
    if d < FUZZY_DIVERSITY_FLOOR:
        p_c = FIXED_CROSSOVER_RATE
        p_m = FIXED_MUTATION_RATE
    else:
        p_c = controllers.crossover_rate(d)
        p_m = controllers.mutation_rate(d)
    if gen <= cfg.max_gen / 2.0:
        r_c = 0.0
    else:
        r_c = controllers.constant_rate(gen, max(d, FUZZY_DIVERSITY_FLOOR))
    return Rates(p_c, p_m, r_c)


def crossover(a: Chromosome, b: Chromosome, p_c: float, layout: GeneLayout,
              rng: random.Random) -> tuple[Chromosome, Chromosome]:
    """One-point crossover on the flat chromosome with probability p_c."""
    if rng.random() >= p_c:
        return a, b
    flat_a = flatten(a)
    flat_b = flatten(b)
    cut = rng.randrange(len(flat_a))
    child_a = rebuild(flat_a[:cut] + flat_b[cut:], layout)
    child_b = rebuild(flat_b[:cut] + flat_a[cut:], layout)
    return child_a, child_b


def mutate(chromosome: Chromosome, p_m: float, k: int, layout: GeneLayout,
           alphabets, rng: random.Random) -> Chromosome:
    """With probability p_m, rewrite k distinct positions to new legal symbols."""
    if rng.random() >= p_m:
        return chromosome
    flat = flatten(chromosome)
    for pos in rng.sample(range(len(flat)), min(k, len(flat))):
        others = [s for s in alphabets[pos] if s != flat[pos]]
        if others:
            flat[pos] = others[rng.randrange(len(others))]
    return rebuild(flat, layout)


def _sort_key(direction: str):
    sign = 1.0 if direction == "minimize" else -1.0

    def key(ind: Individual):
        f = ind.fitness
        if not math.isfinite(f):
            return (1, 0.0)
        return (0, sign * f)

    return key


def select(temp, cfg: EngineConfig, direction: str, rng: random.Random, *,
           elite_count: int | None = None, tournament_size: int | None = None):
    """Elites verbatim, remainder by tournaments over temp.

    Each tournament samples its contenders without internal repeats, so a
    tournament spanning all of temp returns the global best; across
    tournaments every member of temp stays available.
    """
    if len(temp) < cfg.pop_size:
        raise ValueError("temp population smaller than pop_size")
    elite = cfg.elite_count if elite_count is None else elite_count
    size = cfg.tournament_size(len(temp)) if tournament_size is None else tournament_size
    key = _sort_key(direction)
    ranked = sorted(temp, key=key)
    chosen = list(ranked[:elite])
    indices = range(len(temp))
    for _ in range(cfg.pop_size - elite):
        best = None
        best_key = None
        for idx in rng.sample(indices, size):
            contender = temp[idx]
            ck = key(contender)
            if best is None or ck < best_key:
                best = contender
                best_key = ck
        chosen.append(best)
    return chosen


class Engine:
    """One seeded optimization run over a benchmark problem."""

    def __init__(self, problem: Problem, cfg: EngineConfig | None = None, seed: int = 0):
        self.problem = problem
        self.cfg = cfg if cfg is not None else EngineConfig()
        self.seed = seed
        self.rng = random.Random(seed)
        self.symbols = SymbolSet.create(problem.extra_operators, self.cfg.n_constants)
        self.layout = GeneLayout(
            ordinary_head_len=self.cfg.ordinary_head_len,
            homeotic_head_len=self.cfg.homeotic_head_len,
            n_ordinary=self.cfg.n_ordinary_genes,
            n_homeotic=problem.dim,
            max_arity=self.symbols.max_arity,
        )
        self.alphabets = position_alphabets(self.layout, self.symbols)
        self.controllers = RateControllers(self.cfg.max_gen)
        self.constants = None

    def evaluate(self, chromosome: Chromosome) -> Individual:
        ordinary = [eval_ordinary(g, self.symbols, self.constants) for g in chromosome.ordinary]
        point = tuple(eval_homeotic(g, self.symbols, ordinary) for g in chromosome.homeotic)
        return Individual(chromosome, point, self._fitness(point))

    def _fitness(self, point) -> float:
        for v in point:
            if not math.isfinite(v):
                return float("nan")
        try:
            # decoded points may sit far outside the box; treat blow-ups as unfit
            return self.problem.evaluate(point)
        except (OverflowError, ValueError):
            return float("nan")

    def build_temp_population(self, parents, rates: Rates):
        """Parents plus four same-size offspring batches, duplicates shared."""
        rng = self.rng
        layout = self.layout
        cache = {ind.chromosome: ind for ind in parents}

        def materialize(chromosome):
            ind = cache.get(chromosome)
            if ind is None:
                ind = self.evaluate(chromosome)
                cache[chromosome] = ind
            return ind

        def crossed(genomes):
            order = list(range(len(genomes)))
            rng.shuffle(order)
            out = []
            i = 0
            while i + 1 < len(order):
                a, b = crossover(genomes[order[i]], genomes[order[i + 1]], rates.p_c, layout, rng)
                out.append(a)
                out.append(b)
                i += 2
            if i < len(order):
                out.append(genomes[order[i]])
            return out

        def mutated(genomes):
            k = self.cfg.mutations_per_individual
            return [mutate(g, rates.p_m, k, layout, self.alphabets, rng) for g in genomes]

        genomes = [ind.chromosome for ind in parents]
        offspring = []
        offspring += crossed(genomes)
        offspring += mutated(genomes)
        offspring += mutated(crossed(genomes))
        offspring += crossed(mutated(genomes))
        return list(parents) + [materialize(c) for c in offspring]

    def maybe_mutate_constants(self, gen: int, r_c: float, population):
        """Second-half coin flip; on success the whole constant pool is redrawn."""
        if gen <= self.cfg.max_gen / 2.0:
            return population, False
        if self.rng.random() >= r_c:
            return population, False
        self.constants = random_constant_set(
            self.cfg.n_constants, self.problem.lower, self.problem.upper, self.rng)
        return [self.evaluate(ind.chromosome) for ind in population], True

    def _reached_optimum(self, fitness: float) -> bool:
        tol = self.cfg.termination_tol
        opt = self.problem.known_optimum
        if tol is None or opt is None or not math.isfinite(fitness):
            return False
        return abs(fitness - opt) <= tol

    def run(self) -> RunResult:
        cfg = self.cfg
        direction = self.problem.direction
        key = _sort_key(direction)
        self.constants = random_constant_set(
            cfg.n_constants, self.problem.lower, self.problem.upper, self.rng)
        population = [
            self.evaluate(random_chromosome(self.layout, self.symbols, self.rng))
            for _ in range(cfg.pop_size)
        ]
        best = min(population, key=key)
        first_best_gen = 0
        generations = 0
        reading = diversity(population, direction)
        rates = adapt_rates(reading.d, 0, cfg, self.controllers)
        trace = [TraceRow(0, best.fitness, _finite_mean(population), reading.d,
                          rates.p_c, rates.p_m, rates.r_c, False)]
        temp_sizes: list[int] = []
        for gen in range(1, cfg.max_gen + 1):
            if self._reached_optimum(best.fitness):
                break
            reading = diversity(population, direction)
            rates = adapt_rates(reading.d, gen, cfg, self.controllers)
            population, reset = self.maybe_mutate_constants(gen, rates.r_c, population)
            if reset:
                candidate = min(population, key=key)
                if key(candidate) < key(best):
                    best, first_best_gen = candidate, gen
            temp = self.build_temp_population(population, rates)
            temp_sizes.append(len(temp))
            population = select(temp, cfg, direction, self.rng)
            candidate = min(population, key=key)
            if key(candidate) < key(best):
                best, first_best_gen = candidate, gen
            generations = gen
            trace.append(TraceRow(gen, best.fitness, _finite_mean(population), reading.d,
                                  rates.p_c, rates.p_m, rates.r_c, reset))
        return RunResult(self.problem.name, self.seed, best, first_best_gen,
                         generations, trace, temp_sizes)


def _finite_mean(population) -> float:
    fits = [ind.fitness for ind in population if math.isfinite(ind.fitness)]
    if not fits:
        return float("nan")
    return sum(fits) / len(fits)


def run(problem: Problem, cfg: EngineConfig | None = None, seed: int = 0) -> RunResult:
    return Engine(problem, cfg, seed).run()
