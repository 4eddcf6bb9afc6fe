import math
import random

import pytest

from fuzzygep.decode import (
    build_tree,
    eval_chromosome,
    eval_homeotic,
    eval_ordinary,
    expressed_length,
    protected_apply,
)
from fuzzygep.genome import (
    Chromosome,
    ConstantSet,
    Gene,
    GeneLayout,
    SymbolSet,
    position_alphabets,
    random_chromosome,
)

SYM = SymbolSet.create()
CONSTS = ConstantSet((0.1, 0.2, 0.3, 0.87227, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0), -1.0, 1.0)


def gene(head, tail, dc=""):
    return Gene.from_strings(head, tail, dc)


def test_single_terminal_root():
    g = gene("aab", "aaaa", "AAAA")
    assert expressed_length(g, SYM) == 1
    tree = build_tree(g, SYM)
    assert tree.symbol == "a" and tree.children == ()
    assert eval_ordinary(g, SYM, CONSTS) == 0.0


def test_breadth_first_structure():
    g = gene("+*a", "bcaa", "AAAA")
    tree = build_tree(g, SYM)
    assert tree.symbol == "+"
    assert tree.children[0].symbol == "*"
    assert tree.children[1].symbol == "a"
    assert [n.symbol for n in tree.children[0].children] == ["b", "c"]
    # (1*2) + 0
    assert eval_ordinary(g, SYM, CONSTS) == 2.0


def test_digit_terminals():
    assert eval_ordinary(gene("+bc", "aaaa", "AAAA"), SYM, CONSTS) == 3.0
    assert eval_ordinary(gene("jaa", "aaaa", "AAAA"), SYM, CONSTS) == 9.0


def test_rnc_binding_uses_dc_order():
    g = gene("*?b", "aaaa", "DAAB")
    assert eval_ordinary(g, SYM, CONSTS) == 0.87227
    tree = build_tree(g, SYM)
    assert tree.children[0].rnc_ordinal == 0
    assert tree.rnc_ordinal is None


def test_multiple_rnc_terminals():
    # expressed: + ? ?  -> dc[0] and dc[1]
    g = gene("+??", "?aaa", "ABCD")
    assert expressed_length(g, SYM) == 3
    v = eval_ordinary(g, SYM, CONSTS)
    assert v == CONSTS.values[0] + CONSTS.values[1]


def test_unexpressed_suffix_is_ignored():
    a = gene("+ab", "aaaa", "AAAA")
    b = gene("+ab", "jijj", "AAAA")  # same expressed prefix, junk after
    assert eval_ordinary(a, SYM, CONSTS) == eval_ordinary(b, SYM, CONSTS) == 1.0


def test_expressed_length_worst_case_heads():
    for h in range(1, 9):
        layout_tail = h + 1
        g = Gene(("+",) * h, ("a",) * layout_tail, ("A",) * layout_tail)
        assert expressed_length(g, SYM) == 2 * h + 1
        assert eval_ordinary(g, SYM, CONSTS) == 0.0


def test_protected_division():
    assert protected_apply("/", (5.0, 0.0)) == 1.0
    assert protected_apply("/", (5.0, 1e-13)) == 1.0
    assert protected_apply("/", (6.0, 2.0)) == 3.0
    assert protected_apply("/", (1.0, -1e-13)) == 1.0
    assert math.isnan(protected_apply("/", (float("inf"), float("inf"))))


def test_protected_unaries():
    assert protected_apply("Q", (-4.0,)) == 2.0
    assert math.isnan(protected_apply("Q", (float("nan"),)))
    assert protected_apply("Q", (float("-inf"),)) == float("inf")
    assert protected_apply("S", (1.0,)) == pytest.approx(0.8414709848, abs=1e-10)
    assert math.isnan(protected_apply("S", (float("inf"),)))
    assert math.isnan(protected_apply("C", (float("-inf"),)))
    assert protected_apply("E", (710.0,)) == math.exp(700.0)
    assert protected_apply("E", (float("-inf"),)) == 0.0
    assert math.isnan(protected_apply("E", (float("nan"),)))
    assert protected_apply("C", (0.0,)) == 1.0
    # unknown symbol is a programming error, not a protected case
    with pytest.raises(ValueError):
        protected_apply("@", (1.0, 2.0))


def test_exact_ieee_for_ordinary_ops():
    assert protected_apply("+", (0.1, 0.2)) == 0.1 + 0.2
    assert protected_apply("-", (1.0, 0.3)) == 1.0 - 0.3
    assert protected_apply("*", (1e308, 10.0)) == float("inf")


def test_homeotic_gene_refs():
    g = Gene(("+", "g0", "g1"), ("g0",) * 4)
    assert eval_homeotic(g, SYM, [2.0, 3.0]) == 5.0
    root_only = Gene(("g1", "g0", "g0"), ("g0",) * 4)
    assert eval_homeotic(root_only, SYM, [2.0, 3.0]) == 3.0


def test_eval_chromosome_full():
    ord0 = gene("+bc", "aaaa", "AAAA")  # 3
    ord1 = gene("*cd", "aaaa", "AAAA")  # 6
    hom0 = Gene(("+", "g0", "g1"), ("g0",) * 4)  # 9
    hom1 = Gene(("g1", "g0", "g0"), ("g0",) * 4)  # 6
    c = Chromosome((ord0, ord1), (hom0, hom1))
    assert eval_chromosome(c, SYM, CONSTS) == (9.0, 6.0)


def test_homeotic_genes_are_independent():
    ord0 = gene("+bc", "aaaa", "AAAA")
    ord1 = gene("*cd", "aaaa", "AAAA")
    hom0 = Gene(("+", "g0", "g1"), ("g0",) * 4)
    hom1a = Gene(("g1", "g0", "g0"), ("g0",) * 4)
    hom1b = Gene(("g0", "g0", "g0"), ("g0",) * 4)
    a = eval_chromosome(Chromosome((ord0, ord1), (hom0, hom1a)), SYM, CONSTS)
    b = eval_chromosome(Chromosome((ord0, ord1), (hom0, hom1b)), SYM, CONSTS)
    assert a[0] == b[0]
    assert a[1] != b[1]


def test_exp_clamp_keeps_single_chain_finite():
    sym = SymbolSet.create(("E",))
    # E(E(9)) hits the clamp: exp(min(8103, 700)) = exp(700), large but finite
    g = Gene(("E", "E", "j"), ("a",) * 4, ("A",) * 4)
    assert eval_ordinary(g, sym, CONSTS) == math.exp(700.0)


def test_non_finite_propagation_without_raising():
    sym = SymbolSet.create(("E",))
    # exp(700) * exp(700) overflows to inf
    g = Gene(("*", "E", "E", "E", "E"), ("j",) * 6, ("A",) * 6)
    assert math.isinf(eval_ordinary(g, sym, CONSTS))
    # inf - inf propagates as nan, still no exception
    g2 = Gene(("-", "*", "*", "E", "E", "E", "E", "E", "E", "E", "E"),
              ("j",) * 12, ("A",) * 12)
    assert math.isnan(eval_ordinary(g2, sym, CONSTS))


def _randomize_unexpressed(c, layout, sym, rng):
    """Rewrite every slot the decoder never reads; value must not move."""
    alphabets = position_alphabets(layout, sym)
    new_ordinary = []
    offset = 0
    for g in c.ordinary:
        n_expr = expressed_length(g, sym)
        n_rnc = sum(1 for s in g.coding[:n_expr] if s == "?")
        coding = list(g.coding)
        for i in range(n_expr, len(coding)):
            coding[i] = rng.choice(alphabets[offset + i])
        dc = list(g.dc)
        dc_off = offset + layout.ordinary_head_len + layout.ordinary_tail_len
        for i in range(n_rnc, len(dc)):
            dc[i] = rng.choice(alphabets[dc_off + i])
        new_ordinary.append(Gene(tuple(coding[:layout.ordinary_head_len]),
                                 tuple(coding[layout.ordinary_head_len:]),
                                 tuple(dc)))
        offset += layout.ordinary_gene_len
    new_homeotic = []
    for g in c.homeotic:
        n_expr = expressed_length(g, sym)
        coding = list(g.coding)
        for i in range(n_expr, len(coding)):
            coding[i] = rng.choice(alphabets[offset + i])
        new_homeotic.append(Gene(tuple(coding[:layout.homeotic_head_len]),
                                 tuple(coding[layout.homeotic_head_len:])))
        offset += layout.homeotic_gene_len
    return Chromosome(tuple(new_ordinary), tuple(new_homeotic))


def test_unexpressed_regions_never_change_value():
    sym = SymbolSet.create(("S", "Q"))
    layout = GeneLayout(n_homeotic=2)
    rng = random.Random(17)
    for _ in range(100):
        c = random_chromosome(layout, sym, rng)
        base = eval_chromosome(c, sym, CONSTS)
        shuffled = _randomize_unexpressed(c, layout, sym, rng)
        again = eval_chromosome(shuffled, sym, CONSTS)
        for u, v in zip(base, again):
            assert u == v or (math.isnan(u) and math.isnan(v))
