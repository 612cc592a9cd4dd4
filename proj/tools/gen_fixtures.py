#!/usr/bin/env python3
"""Writes the synthetic QASM fixtures under tests/data plus counts.json.

Counts are tallied while emitting, independent of the C++ parser. Total
gates are CZ plus single-qubit gates; measure and barrier are not gates.
"""
import json
import math
import random
import sys
from pathlib import Path

ONE_Q = ["h", "x", "y", "z", "rz", "u", "s", "t", "sdg", "tdg", "ry", "rx", "u3", "u2", "u1", "id"]
PARAMS = {"rz": 1, "ry": 1, "rx": 1, "u1": 1, "u2": 2, "u3": 3, "u": 3}


class Emitter:
    def __init__(self, name, n):
        self.name = name
        self.n = n
        self.lines = ['OPENQASM 2.0;', 'include "qelib1.inc";', f"qreg q[{n}];", f"creg c[{n}];"]
        self.cz = 0
        self.oneq = 0

    def one(self, gate, q, rng):
        k = PARAMS.get(gate, 0)
        args = ",".join(f"{rng.uniform(-math.pi, math.pi):.6f}" for _ in range(k))
        self.lines.append(f"{gate}({args}) q[{q}];" if k else f"{gate} q[{q}];")
        self.oneq += 1

    def czg(self, a, b):
        self.lines.append(f"cz q[{a}],q[{b}];")
        self.cz += 1

    def finish(self, out_dir, measure=True):
        if measure:
            self.lines.append("barrier q;")
            self.lines.append("measure q -> c;")
        (out_dir / f"{self.name}.qasm").write_text("\n".join(self.lines) + "\n")
        return {"qubits": self.n, "cz": self.cz, "total": self.cz + self.oneq}


def random_circuit(name, n, n_cz, seed, out_dir, local=None):
    rng = random.Random(seed)
    e = Emitter(name, n)
    for q in range(n):
        e.one("h", q, rng)
    for _ in range(n_cz):
        if local:
            a = rng.randrange(n)
            b = (a + rng.randint(1, local)) % n
        else:
            a, b = rng.sample(range(n), 2)
        e.czg(a, b)
        for q in (a, b):
            if rng.random() < 0.6:
                e.one(rng.choice(ONE_Q), q, rng)
    return e.finish(out_dir)


def qft_like(name, n, out_dir):
    rng = random.Random(n)
    e = Emitter(name, n)
    for i in range(n):
        e.one("h", i, rng)
        for j in range(i + 1, n):
            # controlled phase as cz sandwiched by single-qubit rotations
            e.one("rz", j, rng)
            e.czg(i, j)
            e.one("rz", j, rng)
            e.czg(i, j)
    return e.finish(out_dir)


def chain(name, n, steps, out_dir):
    rng = random.Random(7)
    e = Emitter(name, n)
    for _ in range(steps):
        for parity in (0, 1):
            for i in range(parity, n - 1, 2):
                e.czg(i, i + 1)
                e.one("rz", i + 1, rng)
                e.czg(i, i + 1)
    return e.finish(out_dir)


def ghz(name, n, out_dir):
    rng = random.Random(1)
    e = Emitter(name, n)
    e.one("h", 0, rng)
    for i in range(1, n):
        e.one("h", i, rng)
        e.czg(i - 1, i)
        e.one("h", i, rng)
    return e.finish(out_dir)


def multi_register(out_dir):
    # two registers, broadcast 1Q gates, uppercase U
    text = """OPENQASM 2.0;
include "qelib1.inc";
qreg a[2];
qreg b[3];
creg c[5];
h a;
U(0.1,0.2,0.3) b[0];
cz a[0],b[2];
cz a[1],b[0];
x b;
barrier a,b;
measure a[0] -> c[0];
"""
    (out_dir / "multi_reg.qasm").write_text(text)
    # h a: 2, U: 1, cz: 2, x b: 3
    return {"qubits": 5, "cz": 2, "total": 8}


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "tests" / "data"
    out_dir.mkdir(parents=True, exist_ok=True)
    counts = {
        "ghz_8": ghz("ghz_8", 8, out_dir),
        "qft_like_10": qft_like("qft_like_10", 10, out_dir),
        "chain_12": chain("chain_12", 12, 7, out_dir),
        "random_9": random_circuit("random_9", 9, 60, 11, out_dir),
        "random_12": random_circuit("random_12", 12, 160, 12, out_dir),
        "local_16": random_circuit("local_16", 16, 180, 16, out_dir, local=3),
        "multi_reg": multi_register(out_dir),
    }
    (out_dir / "bad_gate.qasm").write_text(
        'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[2];\ncx q[0],q[1];\n')
    (out_dir / "bad_syntax.qasm").write_text('OPENQASM 2.0;\nqreg q[2]\nh q[0];\n')
    (out_dir / "counts.json").write_text(json.dumps(counts, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
