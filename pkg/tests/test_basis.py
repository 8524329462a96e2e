import itertools
import random

import pytest

from onegate.basis import (
    AND,
    FANOUT,
    NONAFFINE_2,
    NOT,
    OR,
    Gadget,
    derive_and_or,
    extract_basis,
    extract_fanout,
    extract_not,
    fanout_candidates,
    find_two_input_core,
    inversions_for,
    single_free_restrictions,
)
from onegate.circuit import truth_table_of
from onegate.compiler import parse_netlist, source_to_circuit
from onegate.errors import (
    ClassificationError,
    CoreNotNonAffine,
    NoFanoutError,
    TrivialGateError,
)
from onegate.gate import Gate, Restriction, and_gate, classify, fit_affine, restrict

from oracles import single_free_hits


def binding_of(gadget):
    b = gadget.binding
    return dict(b.fixed), b.role_inputs, b.role_outputs


class TestNonAffineTable:
    def test_exactly_eight_of_sixteen(self):
        nonaffine = [k for k in range(16) if fit_affine(tuple((k >> (3 - i)) & 1 for i in range(4))) is None]
        assert sorted(nonaffine) == sorted(NONAFFINE_2)
        assert len(nonaffine) == 8

    @pytest.mark.parametrize("key", sorted(NONAFFINE_2))
    def test_decomposition(self, key):
        o, p, q = NONAFFINE_2[key]
        for x, y in itertools.product((0, 1), repeat=2):
            assert (key >> (3 - (2 * x + y))) & 1 == o ^ ((x ^ p) & (y ^ q))

    @pytest.mark.parametrize("key", sorted(NONAFFINE_2))
    @pytest.mark.parametrize("target, ref", [(AND, lambda x, y: x & y), (OR, lambda x, y: x | y)])
    def test_inversions_realize_target(self, key, target, ref):
        p, q, o = inversions_for(key, target)
        for x, y in itertools.product((0, 1), repeat=2):
            f = (key >> (3 - (2 * (x ^ p) + (y ^ q)))) & 1
            assert f ^ o == ref(x, y)

    def test_affine_rejected(self):
        with pytest.raises(CoreNotNonAffine):
            inversions_for(0b0110, AND)


class TestOrdering:
    def test_single_free_pattern_order(self):
        pats = [tuple(2 if i in r.free else r.fixed[i] for i in range(3)) for r in single_free_restrictions(3)]
        assert pats == sorted(pats)
        assert len(pats) == 12 and pats[0] == (0, 0, 2) and pats[-1] == (2, 1, 1)


class TestCore:
    def test_fredkin(self, fredkin_gate):
        r, c = find_two_input_core(fredkin_gate)
        assert (r.free, dict(r.fixed), c) == ((0, 1), {2: 0}, 2)
        assert restrict(fredkin_gate, r, c) == (0, 0, 0, 1)

    def test_cnot_is_affine(self, cnot_gate):
        assert find_two_input_core(cnot_gate) is None
        assert find_two_input_core(cnot_gate, target=None) is None

    def test_toffoli_brute_force(self, toffoli_gate):
        # enumerate every (pair, fixing, output) with the restricted column
        hits = []
        for i, k in itertools.combinations(range(3), 2):
            (other,) = {0, 1, 2} - {i, k}
            for v in (0, 1):
                for c in range(3):
                    col = []
                    for a, b in itertools.product((0, 1), repeat=2):
                        bits = {i: a, k: b, other: v}
                        x = bits[0] * 4 + bits[1] * 2 + bits[2]
                        col.append((toffoli_gate.table[x] >> (2 - c)) & 1)
                    if fit_affine(tuple(col)) is None:
                        hits.append(((i, k), v, c, tuple(col)))
        assert hits[0] == ((0, 1), 0, 2, (0, 0, 0, 1))
        r, c = find_two_input_core(toffoli_gate)
        assert (r.free, dict(r.fixed), c) == ((0, 1), {2: 0}, 2)

    def test_plain_order_returns_first_hit(self, fredkin_gate):
        # unranked search takes the first non-affine output, ~x1 & x2 at x2'
        r, c = find_two_input_core(fredkin_gate, target=None)
        assert (r.free, dict(r.fixed), c) == ((0, 1), {2: 0}, 1)

    def test_or_target(self, fredkin_gate):
        r, c = find_two_input_core(fredkin_gate, target=OR)
        assert (dict(r.fixed), c) == ({2: 1}, 1)
        assert restrict(fredkin_gate, r, c) == (0, 1, 1, 1)

    def test_nonaffine_gates_always_have_core(self):
        rng = random.Random(7)
        for _ in range(300):
            n = rng.randint(2, 5)
            m = rng.randint(1, 3)
            g = Gate("r", n, m, tuple(rng.randrange(1 << m) for _ in range(1 << n)))
            core = find_two_input_core(g)
            assert (core is None) == classify(g).affine


class TestExtractNot:
    def test_fredkin(self, fredkin_gate):
        gd = extract_not(fredkin_gate)
        assert binding_of(gd) == ({1: 0, 2: 1}, (0,), (2,))
        assert gd.copies == 1 and gd.garbage_count == 2

    def test_toffoli_first_hit(self, toffoli_gate):
        hits = single_free_hits(toffoli_gate.table, 3, 3, (1, 0))
        pattern, j, c = hits[0]
        assert (pattern, j, c) == ((1, 1, 2), 2, 2)
        assert binding_of(extract_not(toffoli_gate)) == ({0: 1, 1: 1}, (2,), (2,))

    def test_wire_swap(self, swap_gate):
        with pytest.raises(TrivialGateError):
            extract_not(swap_gate)

    @pytest.mark.parametrize("seed", range(5))
    def test_agrees_with_brute_force(self, seed):
        rng = random.Random(seed)
        perm = list(range(16))
        rng.shuffle(perm)
        g = Gate("p", 4, 4, tuple(perm))
        hits = single_free_hits(g.table, 4, 4, (1, 0))
        gd = extract_not(g)
        pattern, j, c = hits[0]
        assert binding_of(gd) == ({i: b for i, b in enumerate(pattern) if b != 2}, (j,), (c,))


class TestExtractFanout:
    def test_fredkin(self, fredkin_gate):
        gd = extract_fanout(fredkin_gate, extract_not(fredkin_gate))
        assert binding_of(gd) == ({1: 0, 2: 1}, (0,), (0, 1))
        assert gd.binding.output_inverted == (0, 0)
        assert gd.copies == 1

    def test_cnot(self, cnot_gate):
        gd = extract_fanout(cnot_gate, None)
        assert binding_of(gd) == ({1: 0}, (0,), (0, 1))

    def test_single_output(self):
        with pytest.raises(NoFanoutError):
            extract_fanout(and_gate(), None)

    def test_inverted_leg_gets_not(self):
        # x' = x, y' = ~x when y = 0: both legs follow x but one is inverted
        g = Gate("inv", 2, 2, (0b01, 0b00, 0b10, 0b11))
        notg = extract_not(g)
        gd = extract_fanout(g, notg)
        assert gd.binding.output_inverted.count(1) == 1
        assert gd.copies == 1 + notg.copies
        assert truth_table_of(gd.circuit).table == (0b00, 0b11)


class TestDeriveAndOr:
    def _core_gate(self, key):
        bits = tuple((key >> (3 - i)) & 1 for i in range(4))
        return Gate("core", 2, 1, bits)

    def _not_gadget(self):
        return extract_not(Gate("inv", 1, 1, (1, 0)))

    def test_and_core(self):
        g = self._core_gate(0b0001)
        a, o = derive_and_or(g, Restriction.fixing(2, {}), 0, self._not_gadget())
        assert a.binding.not_count == 0 and a.copies == 1
        assert o.binding.not_count == 3 and o.copies == 4

    def test_nor_core(self):
        g = self._core_gate(0b1000)
        a, o = derive_and_or(g, Restriction.fixing(2, {}), 0, self._not_gadget())
        assert a.binding.input_inverted == (1, 1) and a.binding.output_inverted == (0,)
        assert o.binding.input_inverted == (0, 0) and o.binding.output_inverted == (1,)
        assert truth_table_of(a.circuit).table == (0, 0, 0, 1)
        assert truth_table_of(o.circuit).table == (0, 1, 1, 1)

    def test_or_not_y_core(self):
        g = self._core_gate(0b1011)
        a, o = derive_and_or(g, Restriction.fixing(2, {}), 0, self._not_gadget())
        assert o.binding.input_inverted == (0, 1) and o.binding.output_inverted == (0,)
        assert a.binding.not_count == 2
        assert truth_table_of(a.circuit).table == (0, 0, 0, 1)

    def test_affine_core_rejected(self):
        g = self._core_gate(0b0110)
        with pytest.raises(CoreNotNonAffine):
            derive_and_or(g, Restriction.fixing(2, {}), 0, self._not_gadget())


class TestExtractBasis:
    def test_fredkin(self, fredkin_gate):
        kit = extract_basis(fredkin_gate)
        assert kit.report == {NOT: 1, AND: 1, OR: 1, FANOUT: 1}
        for kind, gd in kit.gadgets().items():
            assert gd.kind == kind
            assert gd.circuit.gate_types() == {fredkin_gate}

    def test_cnot(self, cnot_gate):
        with pytest.raises(ClassificationError) as exc:
            extract_basis(cnot_gate)
        assert exc.value.reason == "affine"

    def test_toffoli(self, toffoli_gate):
        kit = extract_basis(toffoli_gate)
        assert binding_of(kit.and_g) == ({2: 0}, (0, 1), (2,))
        assert kit.and_g.binding.not_count == 0

    def test_not_one_to_one(self, data_dir):
        from onegate.gate import load_gate
        g = load_gate(data_dir / "injective.tt")
        with pytest.raises(ClassificationError) as exc:
            extract_basis(g)
        assert exc.value.reason == "not_one_to_one"

    def test_injective_with_external_not(self, data_dir):
        from onegate.gate import load_gate
        g = load_gate(data_dir / "injective.tt")
        ext = Gadget(NOT, source_to_circuit(parse_netlist((data_dir / "not.netlist").read_text())))
        kit = extract_basis(g, external_not=ext)
        assert kit.external_not
        tables = {k: truth_table_of(gd.circuit).table for k, gd in kit.gadgets().items()}
        assert tables == {NOT: (1, 0), AND: (0, 0, 0, 1), OR: (0, 1, 1, 1), FANOUT: (0, 3)}

    def test_non_injective_rejected_even_with_not(self, data_dir):
        ext = Gadget(NOT, source_to_circuit(parse_netlist((data_dir / "not.netlist").read_text())))
        with pytest.raises(ClassificationError) as exc:
            extract_basis(and_gate(), external_not=ext)
        assert exc.value.reason == "not_injective"

    def test_deterministic(self, toffoli_gate):
        from onegate.compiler import emit_netlist
        a, b = extract_basis(toffoli_gate), extract_basis(toffoli_gate)
        assert a.as_dict() == b.as_dict()
        for kind in a.gadgets():
            assert emit_netlist(a[kind].circuit) == emit_netlist(b[kind].circuit)

    @pytest.mark.parametrize("seed", range(20))
    def test_random_4bit_permutations(self, seed):
        rng = random.Random(100 + seed)
        perm = list(range(16))
        rng.shuffle(perm)
        g = Gate("p4", 4, 4, tuple(perm))
        if classify(g).affine:
            pytest.skip("affine draw")
        kit = extract_basis(g)
        assert set(kit.report) == {NOT, AND, OR, FANOUT}
        # proof audit: some restriction gives two correlated outputs
        assert next(fanout_candidates(g), None) is not None


def test_two_bit_boundary():
    """All 24 one-to-one 2-bit gates: NOT fails only on the 2 wire permutations;
    every 2-bit permutation is affine, so no kit is ever produced."""
    fails = []
    for perm in itertools.permutations(range(4)):
        g = Gate("p2", 2, 2, perm)
        assert classify(g).affine
        try:
            extract_not(g)
        except TrivialGateError:
            fails.append(perm)
    assert sorted(fails) == [(0, 1, 2, 3), (0, 2, 1, 3)]
