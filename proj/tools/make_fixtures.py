#!/usr/bin/env python3
"""Regenerate the JSON fixtures under fixtures/.

The 36-dimensional rings are written out from their defining fusion rules
(pointed part Z3 = {1, g, g^2}, one self-dual Y of dimension 3, and the
orbits g^i X, g^i X* of dimension 2); everything else is entered directly.
"""
import json
import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "fixtures")

LABELS36 = ["1", "g", "g2", "Y", "X", "gX", "g2X", "Xs", "gXs", "g2Xs"]


def ring36(variant):
    # objects: ("g", i), ("Y",), ("X", i), ("Xs", i)
    def idx(obj):
        kind = obj[0]
        if kind == "g":
            return obj[1] % 3
        if kind == "Y":
            return 3
        if kind == "X":
            return 4 + obj[1] % 3
        return 7 + obj[1] % 3

    objs = [("g", 0), ("g", 1), ("g", 2), ("Y",), ("X", 0), ("X", 1), ("X", 2),
            ("Xs", 0), ("Xs", 1), ("Xs", 2)]

    def shift(terms, s):
        out = []
        for t in terms:
            if t[0] == "Y":
                out.append(t)
            else:
                out.append((t[0], t[1] + s))
        return out

    if variant == "i":
        xx = [("Xs", 0), ("Xs", 1)]
        xsxs = [("X", 0), ("X", 2)]
    else:
        xx = [("Xs", 1), ("Xs", 2)]
        xsxs = [("X", 2), ("X", 1)]

    def product(a, b):
        ka, kb = a[0], b[0]
        if ka == "g":
            return shift([b], a[1])
        if kb == "g":
            return shift([a], b[1])
        if ka == "Y" and kb == "Y":
            return [("g", 0), ("g", 1), ("g", 2), ("Y",), ("Y",)]
        if ka == "Y":
            return [(kb, 0), (kb, 1), (kb, 2)]
        if kb == "Y":
            return [(ka, 0), (ka, 1), (ka, 2)]
        s = a[1] + b[1]
        if ka == "X" and kb == "X":
            return shift(xx, s)
        if ka == "Xs" and kb == "Xs":
            return shift(xsxs, s)
        return [("g", s), ("Y",)]

    triples = {}
    for a in objs:
        for b in objs:
            for c in product(a, b):
                key = (idx(a), idx(b), idx(c))
                triples[key] = triples.get(key, 0) + 1
    dual = [0, 2, 1, 3, 7, 9, 8, 4, 6, 5]
    return {
        "labels": LABELS36,
        "dual": dual,
        "N": [[i, j, k, v] for (i, j, k), v in sorted(triples.items())],
    }


def group_ring(n):
    return {
        "labels": ["1"] + ["g%d" % i if i > 1 else "g" for i in range(1, n)],
        "dual": [(-i) % n for i in range(n)],
        "N": [[i, j, (i + j) % n, 1] for i in range(n) for j in range(n)],
    }


def printed36():
    one, three, mthree, zero = [[1, 0]], [[3, 0]], [[-3, 0]], []

    def two(e):
        return [[2, e]]

    q2, qm2, q1, qm1, m2 = two(2), two(4), two(1), two(5), [[-2, 0]]
    S = [
        [one, one, one, three] + [two(0)] * 6,
        [one, one, one, three, q2, qm2, q2, qm2, q2, qm2],
        [one, one, one, three, qm2, q2, qm2, q2, qm2, q2],
        [three, three, three, mthree] + [zero] * 6,
        [two(0), q2, qm2, zero, qm1, q1, q1, qm1, m2, m2],
        [two(0), qm2, q2, zero, q1, qm1, qm1, q1, m2, m2],
        [two(0), q2, qm2, zero, q1, qm1, m2, m2, qm1, q1],
        [two(0), qm2, q2, zero, qm1, q1, m2, m2, q1, qm1],
        [two(0), q2, qm2, zero, m2, m2, qm1, q1, q1, qm1],
        [two(0), qm2, q2, zero, m2, m2, q1, qm1, qm1, q1],
    ]
    T = [[[1, 0]], [[1, 0]], [[1, 0]], [[-1, 0]], [[1, 2]], [[1, 2]],
         [[1, 0]], [[1, 0]], [[1, 4]], [[1, 4]]]
    return {"root_order": 6, "S": S, "T": T, "tolerance": 1e-9}


def cplx(re, im=0.0):
    return {"re": re, "im": im}


def q8_table():
    # elements: (sign, unit) with unit in 1,i,j,k; index = 4*(sign<0) + unit
    mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    table = []
    for a in range(8):
        row = []
        for b in range(8):
            sa = -1 if a >= 4 else 1
            sb = -1 if b >= 4 else 1
            s, u = mul[(a % 4, b % 4)]
            s *= sa * sb
            row.append(u + (4 if s < 0 else 0))
        table.append(row)
    return table


def write(name, obj):
    path = os.path.join(OUT, name)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        json.dump(obj, f, indent=1)
        f.write("\n")


def main():
    write("rings/trivial.json", {"labels": ["1"], "dual": [0], "N": [[0, 0, 0, 1]]})
    write("rings/z3.json", group_ring(3))
    broken = group_ring(3)
    broken["N"].append([1, 1, 1, 1])
    write("rings/z3_broken.json", broken)
    write("rings/prop36_i.json", ring36("i"))
    write("rings/prop36_ii.json", ring36("ii"))

    write("modular/printed36.json", printed36())
    write("modular/trivial.json", {"S": [[cplx(1)]], "T": [cplx(1)], "tolerance": 1e-9})
    write("modular/semion.json", {
        "S": [[cplx(1), cplx(1)], [cplx(1), cplx(-1)]],
        "T": [cplx(1), cplx(0, 1)], "tolerance": 1e-9})
    tc = [[1, 1, 1, 1], [1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]]
    write("modular/toric_code.json", {
        "S": [[cplx(x) for x in row] for row in tc],
        "T": [cplx(1), cplx(1), cplx(1), cplx(-1)], "tolerance": 1e-9})

    write("cochains/sl3_chi.json", {
        "group_order": 3, "symmetric": True,
        "values": [[1, 1, 2], [1, 2, 2], [2, 1, 2], [2, 2, 0]]})

    spec = {
        "labels": LABELS36,
        "dual": [0, 2, 1, 3, 7, 9, 8, 4, 6, 5],
        "dims": [1, 1, 1, 3, 2, 2, 2, 2, 2, 2],
        "grading": {"assignment": [0, 0, 0, 0, 1, 1, 1, 2, 2, 2]},
        "pointed_action": [{"generator": 1, "permutation": [1, 2, 0, 3, 5, 6, 4, 8, 9, 7]}],
        "commutative": True,
        "N": [],
        "relabel_group": [[0, 2, 1, 3, 4, 6, 5, 7, 9, 8]],
    }
    write("search/spec36.json", spec)

    write("groups/z2.json", {"order": 2, "table": [[0, 1], [1, 0]]})
    write("groups/z3.json", {"order": 3, "table": [[(i + j) % 3 for j in range(3)] for i in range(3)]})
    write("groups/z2xz2.json", {"order": 4, "table": [[i ^ j for j in range(4)] for i in range(4)]})
    write("groups/s3.json", {"permutation_generators": [[1, 0, 2], [1, 2, 0]]})
    write("groups/d4.json", {"permutation_generators": [[1, 2, 3, 0], [0, 3, 2, 1]]})
    write("groups/q8.json", {"order": 8, "table": q8_table()})
    return 0


if __name__ == "__main__":
    sys.exit(main())
