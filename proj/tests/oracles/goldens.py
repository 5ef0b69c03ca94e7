"""Exact-arithmetic oracle for the worked-example goldens frozen in the unit tests.

Run: python3 tests/oracles/goldens.py
"""
from fractions import Fraction as F
from itertools import combinations, product

P = {1: (F(1), F(6)), 2: (F(4), F(4)), 3: (F(6), F(1)), 4: (F(8), F(5))}


def score(p, w):
    return sum(a * b for a, b in zip(p, w))


def corners(box):
    return [tuple(c) + (F(1),) for c in product(*[(lo, hi) for lo, hi in box])]


def dominates(p, q, box):
    s = [(score(p, w), score(q, w)) for w in corners(box)]
    return all(a <= b for a, b in s) and any(a < b for a, b in s)


def eclipse(points, box):
    return sorted(i for i, q in points.items()
                  if not any(dominates(p, q, box) for j, p in points.items() if j != i))


def skyline(points):
    def dom(p, q):
        return all(a <= b for a, b in zip(p, q)) and any(a < b for a, b in zip(p, q))
    return sorted(i for i, q in points.items() if not any(dom(p, q) for j, p in points.items() if j != i))


box = [(F(1, 4), F(2))]
print("eclipse [1/4,2]:", eclipse(P, box))
print("eclipse [2,2]:", eclipse(P, [(F(2), F(2))]))
l, h = box[0]
print("images:", [(float(p[0] + p[1] / h), float(l * p[0] + p[1])) for p in P.values()])
sky = skyline(P)
# Lines y = p1 x - p2 meet where (pa1 - pb1) x = pa2 - pb2.
xs = sorted({(P[a][1] - P[b][1]) / (P[a][0] - P[b][0]) for a, b in combinations(sky, 2)})
print("intersections:", xs)
samples = [xs[0] - 1] + [(xs[i] + xs[i + 1]) / 2 for i in range(len(xs) - 1)] + [min(xs[-1] / 2, xs[-1] + 1)]
for x in samples:
    dist = [abs(P[k][0] * x - P[k][1]) for k in sky]
    print("ov at", x, [sum(1 for e in dist if e < d) for d in dist])

# d = 3 skyline example.
Q = {1: (1, 2, 3), 2: (2, 1, 3), 3: (3, 3, 1), 4: (2, 2, 2), 5: (3, 3, 3)}
print("skyline d=3:", skyline(Q))

# Lifted running example (p1, 1, p2) with box [(1/4,2),(1,1)].
L = {k: (p[0], F(1), p[1]) for k, p in P.items()}
print("lifted eclipse:", eclipse(L, [(F(1, 4), F(2)), (F(1), F(1))]))
print("lifted pair planes x1 =", sorted({(L[a][2] - L[b][2]) / (L[a][0] - L[b][0]) for a, b in combinations(skyline(L), 2)}))

# Three-point d = 3 skyline: ranks at a few dual points.
T = [(1, 2, 3), (2, 1, 3), (3, 3, 1)]
for x in [(-0.5, -0.25), (-2.0, -1.0), (-7.0, -0.1)]:
    s = [-a * x[0] - b * x[1] + c for a, b, c in T]
    print("ranks", x, [sum(1 for e in s if e < v) for v in s])
