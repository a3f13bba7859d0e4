import pytest

import revseq

TABLE_I = [0b0000, 0b1001, 0b0011, 0b1010, 0b0100, 0b1101, 0b0111, 0b1110,
           0b1100, 0b0101, 0b1000, 0b0001, 0b1111, 0b0110, 0b1011, 0b0010]


def test_mg1_truth_table():
    g = revseq.gate("MG1")
    assert g.arity == 4
    assert g.truth_table() == TABLE_I
    assert g.is_bijective()
    inv = g.inverse()
    assert all(inv.eval(g.eval(x)) == x for x in range(16))


def test_builtin_gates():
    assert revseq.gate_names() == ["NOT", "FG", "TG", "FRG", "PG", "MG1", "MG2"]
    with pytest.raises(KeyError):
        revseq.gate("XYZ")
    assert revseq.is_bijective([0, 0]) == (False, (0, 1))


def test_expressions():
    assert revseq.parse_expr("(!A & B) ^ (A & !C)") == "!A & B ^ A & !C"
    assert revseq.eval_expr("(!A&B)^(A&!C)", {"A": True, "B": False, "C": False})
    assert revseq.expr_vars("(!A&C)^(A&B)^D") == ["A", "C", "B", "D"]
    with pytest.raises(ValueError):
        revseq.parse_expr("(A & B")


def test_d_latch():
    sim = revseq.Simulator(revseq.builtin_design("d_latch"))
    step = sim.eval({"CLK": True, "D": True}, {"Q": False})
    assert step["next_state"] == {"Q": True}
    assert step["wires"]["nCLK"] is False
    assert sim.verify("(CLK & D) ^ (!CLK & Q)", "Q") == {"passed": True, "rows": 8, "failures": []}
    m = sim.metrics()
    assert (m["gates"], m["garbage_declared"], m["delay"]) == (1, 1, 1)


def test_jk_latch_oracles():
    sim = revseq.Simulator(revseq.builtin_design("jk_latch"))
    assert sim.verify("(!CLK & Q) ^ (CLK & ((J & !Q) ^ (!K & Q)))", "Q")["passed"]
    assert not sim.verify("(!CLK & Q) ^ (CLK & ((J & !Q) ^ (K & Q)))", "Q")["passed"]
    assert len(sim.next_state_table()) == 16


def test_master_slave_trace():
    sim = revseq.Simulator(revseq.builtin_design("ms_d_ff"))
    trace = sim.run([{"CLK": True, "D": True}, {"CLK": False, "D": True}])
    assert trace[0]["next_state"] == {"Qm": True, "Qs": False}
    assert trace[1]["next_state"]["Qs"] is True


def test_oscillation_and_validation():
    src = """circuit osc
input EN
state Q
const ONE = 1
gate inv : FG (ONE, Q.prev) -> (k, Q.next)
output Q.next as Q
"""
    sim = revseq.Simulator(revseq.parse_circuit(src))
    r = sim.settle({"EN": True}, {"Q": False})
    assert not r["stable"] and r["period"] == 2
    with pytest.raises(RuntimeError):
        sim.run([{"EN": True}], settle=True)
    bad = revseq.parse_circuit("circuit c\ninput A\ngate g : FG (A, x) -> (p, q)\n")
    assert any("UNDRIVEN" in d for d in revseq.validate(bad))
    with pytest.raises(ValueError):
        revseq.Simulator(bad)


def test_reproduce():
    r = revseq.reproduce()
    assert r["ok"], r["diffs"]
    assert sorted(r["files"]) == [f"table{i}.csv" for i in range(1, 7)]
    assert r["files"]["table1.csv"].count("\n") == 17
