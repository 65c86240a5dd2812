#!/usr/bin/env python3
"""Regenerates the fixture corpus. Run from the fixtures/ directory."""
import json


def term(coeff, exponents, param=None):
    t = {"coeff": str(coeff), "exponents": list(exponents)}
    if param is not None:
        t["param"] = param
    return t


def write(name, obj):
    with open(name, "w") as f:
        json.dump(obj, f, indent=1)
        f.write("\n")
    print("wrote", name)


# ---------------------------------------------------------------- two ellipses
write("two_ellipses_vertical.json", {
    "ring": {"variables": ["x1", "x2"], "parameters": ["a1", "a2", "a3", "a4", "a5"]},
    "kind": "vertical",
    "coefficients": [["1", "1", "1", "1", "1"], ["3", "3", "5", "7", "11"]],
    "exponents": [[2, 0], [0, 2], [1, 0], [0, 1], [0, 0]],
    "target": [["1", "0"]] * 5,
    "route": "auto",
    "seed": 1,
})

q_ellipse = [
    [term(1, (2, 0)), term(1, (0, 2))],
    [term(1, (1, 0))],
    [term(1, (0, 1))],
    [term(1, (0, 0))],
]
write("two_ellipses_horizontal.json", {
    "ring": {"variables": ["x1", "x2"],
             "parameters": [f"b{i}" for i in range(1, 9)]},
    "kind": "horizontal",
    "coefficients": [["1", "1", "1", "1"], ["1", "1", "1", "1"]],
    "support": q_ellipse,
    "target": [["1", "0"], ["1", "0"], ["1", "0"], ["1", "0"],
               ["3", "0"], ["5", "0"], ["7", "0"], ["11", "0"]],
    "route": "auto",
    "seed": 1,
})

# every coefficient its own parameter
bkk_vals = ["1", "1", "1", "1", "1", "3", "3", "5", "7", "11"]
exps = [(2, 0), (0, 2), (1, 0), (0, 1), (0, 0)]
write("two_ellipses_bkk.json", {
    "ring": {"variables": ["x1", "x2"], "parameters": [f"c{i}" for i in range(1, 11)]},
    "kind": "plain",
    "polynomials": [
        [term(1, e, i) for i, e in enumerate(exps)],
        [term(1, e, 5 + i) for i, e in enumerate(exps)],
    ],
    "target": [[v, "0"] for v in bkk_vals],
    "route": "bkk",
    "seed": 1,
})

# ------------------------------------------------- stable intersection example
# f1 = t^2 x1^2 + x1 x2 + 1, f2 = t^2 x1^2 + x1 x2 + t^6 x2^2 + x1 + t^2 x2 + 1
write("stable_intersection.json", {
    "ring": {"variables": ["x1", "x2"], "parameters": [f"p{i}" for i in range(1, 10)]},
    "kind": "plain",
    "polynomials": [
        [term(1, (2, 0), 0), term(1, (1, 1), 1), term(1, (0, 0), 2)],
        [term(1, (2, 0), 3), term(1, (1, 1), 4), term(1, (0, 2), 5),
         term(1, (1, 0), 6), term(1, (0, 1), 7), term(1, (0, 0), 8)],
    ],
    "target": [["1", "0"]] * 9,
    "valuation": ["2", "0", "0", "2", "0", "6", "0", "2", "0"],
    "route": "bkk",
    "seed": 1,
})

# ------------------------------------------------------------- polyhedral demo
# f1 = 5 - 3x1^2 - 3x2^2 + x1^2x2^2, f2 = 1 + 2x1x2 - 5x1x2^2 - 3x1^2x2
write("polyhedral.json", {
    "ring": {"variables": ["x1", "x2"],
             "parameters": ["a00", "a20", "a02", "a22", "b00", "b11", "b12", "b21"]},
    "kind": "plain",
    "polynomials": [
        [term(1, (0, 0), 0), term(1, (2, 0), 1), term(1, (0, 2), 2), term(1, (2, 2), 3)],
        [term(1, (0, 0), 4), term(1, (1, 1), 5), term(1, (1, 2), 6), term(1, (2, 1), 7)],
    ],
    "target": [["5", "0"], ["-3", "0"], ["-3", "0"], ["1", "0"],
               ["1", "0"], ["2", "0"], ["-5", "0"], ["-3", "0"]],
    "valuation": ["0", "0", "0", "0", "0", "2", "3", "3"],
    "route": "bkk",
    "seed": 1,
})

# ------------------------------------------- harder horizontal family (Ex 5.4)
cube = {}
for i in range(4):
    for j in range(4 - i):
        k = 3 - i - j
        from math import comb, factorial
        c = factorial(3) // (factorial(i) * factorial(j) * factorial(k))
        cube[(i, j)] = c
square = {}
for i in range(3):
    for j in range(3 - i):
        k = 2 - i - j
        from math import factorial
        c = factorial(2) // (factorial(i) * factorial(j) * factorial(k))
        square[(i, j)] = c
write("hard_horizontal.json", {
    "ring": {"variables": ["x1", "x2"], "parameters": [f"a{i}" for i in range(1, 9)]},
    "kind": "horizontal",
    "coefficients": [["1", "1", "1", "1"], ["1", "1", "1", "1"]],
    "support": [
        [term(c, e) for e, c in sorted(cube.items())],
        [term(c, e) for e, c in sorted(square.items())],
        [term(1, (1, 0))],
        [term(1, (0, 0))],
    ],
    "base": {
        "polynomials": [
            [term(1, (0, 0)), term(1, (1, 0)), term(1, (0, 1))],
            [term(1, (1, 0))],
        ],
        "powers": [[3, 0], [2, 0], [0, 1], [0, 0]],
    },
    "target": [["1", "0"], ["1", "0"], ["1", "0"], ["1", "0"],
               ["2", "0"], ["3", "0"], ["5", "0"], ["7", "0"]],
    "valuation": ["4", "2", "0", "0", "11", "7", "0", "1"],
    "route": "auto",
    "seed": 1,
})

# --------------------------------------------------- Duffing modified (14 polys)
# variables: u1 v1 u2 v2  z11 z12 z21 z22 z31 z32 z41 z42  y1 y2
dv = ["u1", "v1", "u2", "v2", "z11", "z12", "z21", "z22",
      "z31", "z32", "z41", "z42", "y1", "y2"]
di = {name: i for i, name in enumerate(dv)}
N = len(dv)


def dterm(coeff, mono, param=None):
    e = [0] * N
    for name, p in mono:
        e[di[name]] += p
    return term(coeff, e, param)


duffing_params = []
duffing_target = []
fhat = []
prm = 0
for i, (u, v) in enumerate([("u1", "v1"), ("u1", "v1"), ("u2", "v2"), ("u2", "v2")]):
    row = [dterm(1, [], prm),
           dterm(1, [(u, 1)], prm + 1),
           dterm(1, [(v, 1)], prm + 2),
           dterm(1, [(f"z{i+1}1", 1)], prm + 3),
           dterm(1, [(f"z{i+1}2", 1)], prm + 4)]
    fhat.append(row)
    for j in range(5):
        duffing_params.append(f"a{i+1}{j}")
        duffing_target.append([str(3 * prm + 2 * j + 2), "0"])
    prm += 5
ghat = []
for i, var in enumerate(["u1", "v1", "u2", "v2"]):
    ghat.append([dterm(1, [(f"z{i+1}1", 1)]), dterm(-1, [(var, 1), ("y1", 1)])])
    ghat.append([dterm(1, [(f"z{i+1}2", 1)]), dterm(-1, [(var, 1), ("y2", 1)])])
khat = [
    [dterm(1, [("y1", 1)]), dterm(-1, [("u1", 2)]), dterm(-1, [("v1", 2)])],
    [dterm(1, [("y2", 1)]), dterm(-1, [("u2", 2)]), dterm(-1, [("v2", 2)])],
]
write("duffing_modified.json", {
    "ring": {"variables": dv, "parameters": duffing_params},
    "kind": "plain",
    "polynomials": fhat + ghat + khat,
    "target": duffing_target,
    "route": "bkk",
    "seed": 1,
})

# ----------------------------------------------------------- Kuramoto fixtures


def kuramoto(name, nverts, edges, C, wbar):
    # Reference-oscillator convention: x_n = 1 and the n-th equation dropped,
    # which removes the global torus scaling.  Horizontal system in
    # x_1..x_{n-1}: f_i = wbar_i * 1 - sum_{edges at i} a_ij q_ij with
    # q_ij = C_ij x_i / x_j - (1/C_ij) x_j / x_i.
    nv = nverts - 1

    def emb(i):  # exponent of x_i after x_n -> 1
        e = [0] * nv
        if i < nv:
            e[i] = 1
        return e

    support = [[term(1, [0] * nv)]]
    for (i, j), c in zip(edges, C):
        e1 = [a - b for a, b in zip(emb(i), emb(j))]
        e2 = [-a for a in e1]
        support.append([term(c, e1), term(f"-1/{c}", e2)])
    coeffs = []
    for i in range(nv):
        row = ["1"]
        for (a, b) in edges:
            row.append("-1" if i in (a, b) else "0")
        coeffs.append(row)
    target = []
    for i in range(nv):
        target.append([str(wbar[i]), "0"])
        for (a, b) in edges:
            target.append(["1", "0"])
    write(name, {
        "ring": {"variables": [f"x{i+1}" for i in range(nv)],
                 "parameters": [f"a{i+1}{j}" for i in range(nv)
                                for j in range(len(edges) + 1)]},
        "kind": "horizontal",
        "coefficients": coeffs,
        "support": support,
        "target": target,
        "route": "relaxed",
        "seed": 1,
    })


kuramoto("kuramoto_triangle.json", 3, [(0, 1), (0, 2), (1, 2)], [2, 3, 5], [3, 5, 7])
kuramoto("kuramoto_cycle4.json", 4, [(0, 1), (1, 2), (2, 3), (0, 3)],
         [2, 3, 5, 7], [3, 5, 7, 11])

# --------------------------------------------------------------- Laman fixture
# variables (x12, x13, x23, x24, x34); lambda_ij with v_ij = i + j
lv = ["x12", "x13", "x23", "x24", "x34"]
li = {n: i for i, n in enumerate(lv)}


def lterm(coeff, var, power, param=None):
    e = [0] * 5
    e[li[var]] = power
    return term(coeff, e, param)


write("laman.json", {
    "ring": {"variables": lv, "parameters": ["l12", "l13", "l23", "l24", "l34"]},
    "kind": "plain",
    "polynomials": [
        [lterm(1, "x12", 1), lterm(1, "x23", 1), lterm(-1, "x13", 1)],
        [lterm(1, "x23", 1), lterm(1, "x34", 1), lterm(-1, "x24", 1)],
        [lterm(1, "x12", -1, 0), lterm(1, "x23", -1, 2), lterm(-1, "x13", -1, 1)],
        [lterm(1, "x23", -1, 2), lterm(1, "x34", -1, 4), lterm(-1, "x24", -1, 3)],
        [lterm(1, "x23", 1), term(-1, [0] * 5)],
    ],
    "groups": [[0, 1], [2, 3], [4]],
    "target": [["1", "0"]] * 5,
    "valuation": ["3", "4", "5", "6", "7"],
    "route": "bkk",
    "seed": 1,
})

# ------------------------------------------------------------------ WNT system
# Embedded vertical form: one column per rate constant k_j (with its reactant
# monomial), one fresh column per distinct parameterless conservation-law
# monomial, and one column per conservation constant c_i.
species = 19
x = lambda *pairs: tuple(pairs)  # [(species_index_1based, power), ...]
kin_cols = [
    # (param name, monomial, {row_1based: coeff})
    ("k1", x((1, 1)), {1: 1}),
    ("k2", x((2, 1)), {1: -1}),
    ("k26", x((2, 1)), {1: -1, 2: 1}),
    ("k27", x((3, 1)), {1: 1, 2: -1}),
    ("k3", x((2, 1), (4, 1)), {1: -1, 9: 1}),
    ("k4", x((14, 1)), {1: 1, 9: -1}),
    ("k5", x((14, 1)), {1: 1, 3: 1, 9: -1}),
    ("k14", x((3, 1), (6, 1)), {2: -1, 4: -1, 10: 1}),
    ("k15", x((15, 1)), {2: 1, 4: 1, 10: -1}),
    ("k16", x((15, 1)), {2: 1, 5: 1, 10: -1}),
    ("k28", x((5, 1)), {3: -1, 5: 1}),
    ("k29", x((7, 1)), {3: 1, 5: -1}),
    ("k6", x((5, 1), (8, 1)), {3: -1, 11: -1}),
    ("k7", x((16, 1)), {3: 1, 11: 1}),
    ("k8", x((16, 1)), {11: 1}),
    ("k17", x((7, 1), (9, 1)), {5: -1, 12: 1}),
    ("k18", x((17, 1)), {5: 1, 12: -1}),
    ("k19", x((17, 1)), {4: 1, 12: 1}),
    ("k20", x((6, 1), (11, 1)), {4: -1, 7: -1, 14: 1}),
    ("k21", x((19, 1)), {4: 1, 7: 1, 14: -1}),
    ("k22", x((19, 1)), {4: 1, 14: -1}),
    ("k12", x(), {6: 1}),
    ("k13", x((10, 1)), {6: -1}),
    ("k30", x((10, 1)), {6: -1, 7: 1}),
    ("k31", x((11, 1)), {6: 1, 7: -1}),
    ("k9", x((4, 1), (10, 1)), {6: -1, 13: 1}),
    ("k10", x((18, 1)), {6: 1, 13: -1}),
    ("k11", x((18, 1)), {13: -1}),
    ("k23", x((11, 1)), {7: -1}),
    ("k24", x((11, 1), (12, 1)), {7: -1, 8: 1}),
    ("k25", x((13, 1)), {7: 1, 8: -1}),
]
conservation = [
    (15, [1, 2, 3, 14, 15], "c1"),
    (16, [4, 5, 6, 7, 14, 15, 16, 17, 18, 19], "c2"),
    (17, [8, 16], "c3"),
    (18, [9, 17], "c4"),
    (19, [12, 13], "c5"),
]
params, exponents, coeff_rows = [], [], [[] for _ in range(19)]
target = []
prime = iter([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59,
              61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127,
              131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
              197, 199, 211, 223, 227, 229, 233, 239, 241])
for name, mono, rows in kin_cols:
    params.append(name)
    e = [0] * species
    for sp, p in mono:
        e[sp - 1] = p
    exponents.append(e)
    for r in range(19):
        coeff_rows[r].append(str(rows.get(r + 1, 0)))
    target.append([str(next(prime)), "0"])
# fresh parameters for the conservation-law monomials (shared per monomial)
fresh_monos = {}
for row, members, cname in conservation:
    for sp in members:
        if sp not in fresh_monos:
            fresh_monos[sp] = len(params)
            params.append(f"b{sp}")
            e = [0] * species
            e[sp - 1] = 1
            exponents.append(e)
            for r in range(19):
                coeff_rows[r].append("0")
            target.append(["1", "0"])  # fresh parameter, target value 1
        coeff_rows[row - 1][fresh_monos[sp]] = "1"
for row, members, cname in conservation:
    params.append(cname)
    exponents.append([0] * species)
    for r in range(19):
        coeff_rows[r].append("-1" if r == row - 1 else "0")
    target.append([str(next(prime)), "0"])
write("wnt.json", {
    "ring": {"variables": [f"x{i+1}" for i in range(species)], "parameters": params},
    "kind": "vertical",
    "coefficients": coeff_rows,
    "exponents": exponents,
    "target": target,
    "route": "vertical",
    "seed": 1,
})

# --------------------------------------------------- reduced WNT-style network
# X1 <-> X2 (k1,k2), X2 + X3 <-> X4 (k3,k4), X4 -> X1 + X3 (k5)
# square system: xdot1, xdot4, and the two conservation laws
rv = 4
rcols = [
    ("k1", [(1, 1)], {1: -1, 2: 1}),
    ("k2", [(2, 1)], {1: 1, 2: -1}),
    ("k5", [(4, 1)], {1: 1, 2: -1}),
    ("k3", [(2, 1), (3, 1)], {2: -1}),
    ("k4", [(4, 1)], {2: 1}),
]
rrows = 4  # f1 = xdot1, f2 = xdot4 = k3 x2x3 - (k4+k5) x4, f3, f4 conservations
rparams, rexps, rcoeffs, rtarget = [], [], [[] for _ in range(rv)], []
kvals = {"k1": 2, "k2": 3, "k5": 5, "k3": 7, "k4": 11}
for name, mono, _ in rcols:
    rparams.append(name)
    e = [0] * rv
    for sp, p in mono:
        e[sp - 1] = p
    rexps.append(e)
    rtarget.append([str(kvals[name]), "0"])
# coefficient rows: f1 = -k1 x1 + k2 x2 + k5 x4
rcoeffs[0] = ["-1", "1", "1", "0", "0"]
# f2 = k3 x2 x3 - k4 x4 - k5 x4
rcoeffs[1] = ["0", "0", "-1", "1", "-1"]
# conservation x1 + x2 + x4 = c1 and x3 + x4 = c2, embedded with fresh params
for sp in [1, 2, 4, 3]:
    rparams.append(f"b{sp}")
    e = [0] * rv
    e[sp - 1] = 1
    rexps.append(e)
    rtarget.append(["1", "0"])
rparams += ["b4c", "c1", "c2"]
e = [0] * rv
e[3] = 1
rexps.append(e)  # x4 appears in both conservation laws: second fresh column
rtarget.append(["1", "0"])
rexps.append([0] * rv)
rtarget.append(["13", "0"])
rexps.append([0] * rv)
rtarget.append(["17", "0"])
rcoeffs[0] += ["0", "0", "0", "0", "0", "0", "0"]
rcoeffs[1] += ["0", "0", "0", "0", "0", "0", "0"]
rcoeffs[2] = ["0", "0", "0", "0", "0", "1", "1", "1", "0", "0", "-1", "0"]
rcoeffs[3] = ["0", "0", "0", "0", "0", "0", "0", "0", "1", "1", "0", "-1"]
write("wnt_reduced.json", {
    "ring": {"variables": [f"x{i+1}" for i in range(rv)], "parameters": rparams},
    "kind": "vertical",
    "coefficients": rcoeffs,
    "exponents": rexps,
    "target": rtarget,
    "route": "vertical",
    "seed": 1,
})
