#!/usr/bin/env python3
"""Writes the BLIF benchmark corpus under benchmarks/."""

import argparse
import pathlib
import random


class Blif:
    def __init__(self, name):
        self.name = name
        self.inputs = []
        self.outputs = []
        self.rows = []
        self.count = 0

    def pi(self, name):
        self.inputs.append(name)
        return name

    def fresh(self):
        self.count += 1
        return f"n{self.count}"

    def names(self, ins, cubes, out=None):
        out = out or self.fresh()
        self.rows.append((list(ins), cubes, out))
        return out

    def and2(self, a, b, out=None):
        return self.names([a, b], ["11 1"], out)

    def or2(self, a, b, out=None):
        return self.names([a, b], ["1- 1", "-1 1"], out)

    def xor2(self, a, b, out=None):
        return self.names([a, b], ["10 1", "01 1"], out)

    def inv(self, a, out=None):
        return self.names([a], ["0 1"], out)

    def nand2(self, a, b, out=None):
        return self.names([a, b], ["0- 1", "-0 1"], out)

    def buf(self, a, out):
        return self.names([a], ["1 1"], out)

    def po(self, signal, name):
        if signal != name:
            self.buf(signal, name)
        self.outputs.append(name)

    def text(self):
        lines = [f".model {self.name}", ".inputs " + " ".join(self.inputs),
                 ".outputs " + " ".join(self.outputs)]
        for ins, cubes, out in self.rows:
            lines.append(".names " + " ".join(ins + [out]))
            lines.extend(cubes)
        lines.append(".end")
        return "\n".join(lines) + "\n"


def kogge_stone(width):
    m = Blif(f"ksa{width}")
    a = [m.pi(f"a{i}") for i in range(width)]
    b = [m.pi(f"b{i}") for i in range(width)]
    g = [m.and2(a[i], b[i]) for i in range(width)]
    p = [m.xor2(a[i], b[i]) for i in range(width)]
    G, P = list(g), list(p)
    d = 1
    while d < width:
        nG, nP = list(G), list(P)
        for i in range(d, width):
            nG[i] = m.or2(G[i], m.and2(P[i], G[i - d]))
            if i >= 2 * d:
                nP[i] = m.and2(P[i], P[i - d])
        G, P = nG, nP
        d *= 2
    m.po(p[0], "s0")
    for i in range(1, width):
        m.po(m.xor2(p[i], G[i - 1]), f"s{i}")
    m.po(G[width - 1], "cout")
    return m


def ripple(width):
    m = Blif(f"rca{width}")
    a = [m.pi(f"a{i}") for i in range(width)]
    b = [m.pi(f"b{i}") for i in range(width)]
    c = m.pi("cin")
    for i in range(width):
        p = m.xor2(a[i], b[i])
        m.po(m.xor2(p, c), f"s{i}")
        c = m.or2(m.and2(a[i], b[i]), m.and2(p, c))
    m.po(c, "cout")
    return m


def c17():
    m = Blif("c17")
    n1, n2, n3, n6, n7 = (m.pi(x) for x in ["N1", "N2", "N3", "N6", "N7"])
    n10 = m.nand2(n1, n3)
    n11 = m.nand2(n3, n6)
    n16 = m.nand2(n2, n11)
    n19 = m.nand2(n11, n7)
    m.po(m.nand2(n10, n16), "N22")
    m.po(m.nand2(n16, n19), "N23")
    return m


def multiplier(width):
    m = Blif(f"mult{width}")
    a = [m.pi(f"a{i}") for i in range(width)]
    b = [m.pi(f"b{i}") for i in range(width)]
    cols = [[] for _ in range(2 * width)]
    for i in range(width):
        for j in range(width):
            cols[i + j].append(m.and2(a[i], b[j]))
    for k in range(2 * width):
        while len(cols[k]) > 2:
            x, y, z = cols[k].pop(0), cols[k].pop(0), cols[k].pop(0)
            t = m.xor2(x, y)
            cols[k].append(m.xor2(t, z))
            cols[k + 1].append(m.or2(m.and2(x, y), m.and2(t, z)))
        if len(cols[k]) == 2:
            x, y = cols[k]
            cols[k] = [m.xor2(x, y)]
            if k + 1 < 2 * width:
                cols[k + 1].append(m.and2(x, y))
    for k in range(2 * width):
        m.po(cols[k][0] if cols[k] else None, f"p{k}")
    return m


def comparator(width):
    m = Blif(f"cmp{width}")
    a = [m.pi(f"a{i}") for i in range(width)]
    b = [m.pi(f"b{i}") for i in range(width)]
    gt = [m.and2(a[i], m.inv(b[i])) for i in range(width)]
    eq = [m.inv(m.xor2(a[i], b[i])) for i in range(width)]
    # prefix from the most significant bit down, in a tree
    items = [(gt[i], eq[i]) for i in reversed(range(width))]
    while len(items) > 1:
        nxt = []
        for k in range(0, len(items) - 1, 2):
            (g1, e1), (g0, e0) = items[k], items[k + 1]
            nxt.append((m.or2(g1, m.and2(e1, g0)), m.and2(e1, e0)))
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    m.po(items[0][0], "gt")
    m.po(items[0][1], "eq")
    return m


def decoder(bits):
    m = Blif(f"dec{bits}")
    s = [m.pi(f"s{i}") for i in range(bits)]
    ns = [m.inv(x) for x in s]
    half = bits // 2
    def minterms(vars_, nvars):
        terms = []
        for v in range(1 << len(vars_)):
            lits = [vars_[i] if (v >> i) & 1 else nvars[i] for i in range(len(vars_))]
            t = lits[0]
            for l in lits[1:]:
                t = m.and2(t, l)
            terms.append(t)
        return terms
    lo = minterms(s[:half], ns[:half])
    hi = minterms(s[half:], ns[half:])
    for j, h in enumerate(hi):
        for i, l in enumerate(lo):
            m.po(m.and2(l, h), f"y{j * len(lo) + i}")
    return m


def parity(width):
    m = Blif(f"parity{width}")
    xs = [m.pi(f"x{i}") for i in range(width)]
    while len(xs) > 1:
        xs = [m.xor2(xs[k], xs[k + 1]) for k in range(0, len(xs) - 1, 2)] + ([xs[-1]] if len(xs) % 2 else [])
    m.po(xs[0], "p")
    return m


def priority_encoder(width):
    m = Blif(f"prienc{width}")
    r = [m.pi(f"r{i}") for i in range(width)]
    # grant i = r_i and no higher request
    none_above = None
    grants = [None] * width
    for i in reversed(range(width)):
        grants[i] = r[i] if none_above is None else m.and2(r[i], none_above)
        nr = m.inv(r[i])
        none_above = nr if none_above is None else m.and2(none_above, nr)
    bits = max(1, (width - 1).bit_length())
    for k in range(bits):
        terms = [grants[i] for i in range(width) if (i >> k) & 1]
        t = terms[0]
        for x in terms[1:]:
            t = m.or2(t, x)
        m.po(t, f"y{k}")
    m.po(m.inv(none_above), "valid")
    return m


def mux(sel_bits):
    m = Blif(f"mux{1 << sel_bits}")
    d = [m.pi(f"d{i}") for i in range(1 << sel_bits)]
    s = [m.pi(f"s{i}") for i in range(sel_bits)]
    level = d
    for k in range(sel_bits):
        ns = m.inv(s[k])
        level = [m.or2(m.and2(level[2 * i], ns), m.and2(level[2 * i + 1], s[k]))
                 for i in range(len(level) // 2)]
    m.po(level[0], "y")
    return m


def alu(width):
    m = Blif(f"alu{width}")
    a = [m.pi(f"a{i}") for i in range(width)]
    b = [m.pi(f"b{i}") for i in range(width)]
    op0, op1 = m.pi("op0"), m.pi("op1")
    nop0, nop1 = m.inv(op0), m.inv(op1)
    c = None
    for i in range(width):
        andv = m.and2(a[i], b[i])
        orv = m.or2(a[i], b[i])
        xorv = m.xor2(a[i], b[i])
        if c is None:
            s, c = xorv, andv
        else:
            s = m.xor2(xorv, c)
            c = m.or2(andv, m.and2(xorv, c))
        lo = m.or2(m.and2(andv, nop0), m.and2(orv, op0))
        hi = m.or2(m.and2(xorv, nop0), m.and2(s, op0))
        m.po(m.or2(m.and2(lo, nop1), m.and2(hi, op1)), f"y{i}")
    m.po(c, "cout")
    return m


def fig4_chain():
    m = Blif("fig4")
    a, b, c, d = (m.pi(x) for x in "abcd")
    t1 = m.and2(a, b)
    t2 = m.names([t1, c], ["10 1"])
    m.po(m.and2(t2, d), "f")
    return m


def majority_voter(n):
    m = Blif(f"maj{n}")
    xs = [m.pi(f"x{i}") for i in range(n)]
    # pairwise majority-of-three cascade
    def maj(x, y, z):
        return m.or2(m.or2(m.and2(x, y), m.and2(x, z)), m.and2(y, z))
    level = xs
    while len(level) >= 3:
        nxt = [maj(level[k], level[k + 1], level[k + 2]) for k in range(0, len(level) - 2, 3)]
        nxt += level[len(level) - len(level) % 3:] if len(level) % 3 else []
        level = nxt
    m.po(level[0] if len(level) == 1 else m.and2(level[0], level[1]), "y")
    return m


def control_logic(name, num_pis, num_pos, num_gates, seed):
    """Random multi-level control logic with local reuse, sized like the
    small ISCAS-85 circuits."""
    rng = random.Random(seed)
    m = Blif(name)
    sigs = [m.pi(f"i{k}") for k in range(num_pis)]
    ops = [m.and2, m.or2, m.nand2, m.nand2, m.and2, m.or2, m.xor2]
    for _ in range(num_gates):
        window = sigs[-max(8, len(sigs) // 3):]
        a = rng.choice(window)
        b = rng.choice(sigs if rng.random() < 0.3 else window)
        while b == a:
            b = rng.choice(sigs)
        if rng.random() < 0.15:
            a = m.inv(a)
        sigs.append(rng.choice(ops)(a, b))
    for k, s in enumerate(sigs[-num_pos:]):
        m.po(s, f"o{k}")
    return m


CIRCUITS = [
    lambda: kogge_stone(4), lambda: kogge_stone(8), lambda: kogge_stone(16),
    lambda: ripple(4), lambda: ripple(8), c17,
    lambda: multiplier(4), lambda: comparator(8), lambda: decoder(4),
    lambda: parity(16), lambda: priority_encoder(8), lambda: mux(3),
    lambda: alu(4), fig4_chain, lambda: majority_voter(9),
    lambda: control_logic("ctl160", 36, 7, 160, 432),
    lambda: control_logic("ctl380", 60, 26, 380, 880),
    lambda: control_logic("ctl600", 33, 25, 600, 1908),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "benchmarks"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for make in CIRCUITS:
        m = make()
        (out / f"{m.name}.blif").write_text(m.text())
        print(m.name)


if __name__ == "__main__":
    main()
