"""Writes cyclic_gf64.design from the exponent tables, independently of the
Rust implementation: GF(64) = F_2[x]/(x^6+x+1), F_2^7 = GF(64) x F_2."""

BASE = [[0, 1, 4, 16], [0, 2, 8, 32], [0, 5, 27, 40], [0, 7, 44, 53], [0, 11, 29, 49]]
HYPER = [0, 1, 4, 6, 16, 24, 33]

pw = [1]
for _ in range(62):
    v = pw[-1] << 1
    if v & 64:
        v ^= 0b1000011
    pw.append(v)


def a(e):
    return pw[e % 63]


def vec(beta, bit):
    return [(beta >> i) & 1 for i in range(6)] + [bit]


def rref(vs):
    rows = []
    for v in vs:
        v = v[:]
        for r in rows:
            p = r.index(1)
            if v[p]:
                v = [x ^ y for x, y in zip(v, r)]
        if any(v):
            p = v.index(1)
            rows = [[x ^ y for x, y in zip(r, v)] if r[p] else r for r in rows]
            rows.append(v)
    rows.sort(key=lambda r: r.index(1))
    return rows


blocks = set()
for A in BASE:
    for l in range(63):
        blocks.add(tuple(map(tuple, rref([vec(a(j + l), 1) for j in A]))))
for l in range(21):
    blocks.add(tuple(map(tuple, rref([vec(a(l), 0), vec(a(21 + l), 0), vec(0, 1)]))))
for l in range(63):
    blocks.add(tuple(map(tuple, rref([vec(a(e + l), 0) for e in HYPER]))))
assert len(blocks) == 399 and all(len(b) == 3 for b in blocks)


def key(b):
    return ([r.index(1) for r in b], [x for r in b for x in r])


with open("cyclic_gf64.design", "w") as f:
    f.write("qcover-design v1\nq=2 n=7 k=3\n# label: cyclic C_2[7,3,2] over GF(64)\n")
    for b in sorted(blocks, key=key):
        f.write(" ".join("".join(map(str, r)) for r in b) + "\n")
