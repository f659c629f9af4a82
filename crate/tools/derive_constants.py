#!/usr/bin/env python3
"""Independent derivations for the numeric constants frozen into the test suite.

Every expected value asserted in the Rust tests (finite sums, recursion
tables, closed-form evaluations, planner expectations, graph census counts)
is recomputed here from first principles, with no dependency on the library
under test. Run it to regenerate the constants block:

    python3 tools/derive_constants.py
"""

import math
from fractions import Fraction


def splice_exact(n0: int, p: float) -> float:
    """Mean merged length of one splice, failures shortening both chains by 2.

    Success after i failures yields a chain of 2(n0 - 2i); exhaustion counts
    as length 0. The i = n0/2 term is zero, so including it is harmless.
    """
    return sum(2 * (n0 - 2 * i) * p * (1 - p) ** i for i in range(n0 // 2 + 1))


def critical_length(p: float) -> float:
    return 4 * (1 - p) / p


def doubling_exact(p: float, levels: int):
    """Exact restart-doubling recursion: level i builds a 2^(i+1)-qubit chain.

    T_i = (T_{i-1} + 1)/p with T_0 = 1/p  (units of t_a)
    M_i = (2 M_{i-1} + 1)/p with M_0 = 1/p
    """
    T, M = [], []
    t = m = Fraction(0)
    for i in range(levels + 1):
        if i == 0:
            t = Fraction(1) / Fraction(p)
            m = Fraction(1) / Fraction(p)
        else:
            t = (t + 1) / Fraction(p)
            m = (2 * m + 1) / Fraction(p)
        T.append(t)
        M.append(m)
    return T, M


def chain_plan(n: int, p: float):
    """Fixed build plan: double to n0 = 2^K >= ceil(n_c)+1, then splice rounds.

    Returns (n0, K, rounds, expected time, expected attempts) where the
    expectations follow the designated-lineage timing model:
        T = T_doubling(K) + R/p,  A = 2^R M_doubling(K) + (2^R - 1)/p.
    """
    nc = Fraction(4) * (1 - Fraction(p)) / Fraction(p)
    n0_raw = math.ceil(nc) + 1
    K = max(0, math.ceil(math.log2(n0_raw)))
    n0 = 1 << K
    if n <= n0:
        # pure doubling to the smallest power of two >= n
        K = max(0, math.ceil(math.log2(n)))
        n0 = 1 << K
        rounds = 0
    else:
        rounds = 0
        while (n0 - nc) * (1 << rounds) + nc < n:
            rounds += 1
    if K == 0:
        Tdub, Mdub = Fraction(0), Fraction(0)
    else:
        T, M = doubling_exact(p, K - 1)
        Tdub, Mdub = T[K - 1], M[K - 1]
    Texp = Tdub + Fraction(rounds) / Fraction(p)
    Aexp = (1 << rounds) * Mdub + Fraction((1 << rounds) - 1) / Fraction(p)
    return n0, K, rounds, Texp, Aexp


def chain_cost_asymptotic(n: int, p: float):
    """Power-law totals for n > n_c: first term + logarithmic term."""
    nc = critical_length(p)
    t1 = (1 / p) ** (math.log2(nc + 1) + 1)
    t2 = (1 / p) * math.log2(n - nc)
    m = (2 / p) ** (math.log2(nc + 1) + 1) * (n - nc) / 2
    return t1, t2, m


def lattice_time_terms(L: float, p: float):
    t1 = (1 / p) ** (math.log2(4 / p - 3) + 1)
    t2 = (1 / p) * math.log2((4 / p) * (2 * L - 1))
    return t1, t2, 1.0


def lattice_attempt_terms(N: int, eps: float, p: float):
    L = math.log(2 * N / eps)
    a1 = (2 / p) ** (2 + math.log2(4 / p - 3)) * N * (2 * L - 1)
    a2 = (2 * N / p) * L
    return a1, a2


def hex_time_terms(N: int, eps: float, p: float):
    Lh = math.log(3 * N / (2 * eps))
    t1 = (1 / p) ** (math.log2(4 / p - 3) + 1)
    t2 = (1 / p) * math.log2((4 / p) * (1.5 * Lh - 1))
    return t1, t2, 1.0


def hex_attempt_terms(N: int, eps: float, p: float):
    Lh = math.log(3 * N / (2 * eps))
    a1 = (2 / p) ** (2 + math.log2(4 / p - 3)) * N * (1.5 * Lh - 1)
    a2 = (3 * N / (2 * p)) * Lh
    return a1, a2


def prior_scheme_time(L: float, p: float):
    t1, t2, _ = lattice_time_terms(L, p)
    return t1 + t2 + L / p


def arms_required(pairs: float, eps: float, p: float, d: int) -> int:
    raw = (d / p) * math.log(pairs / eps)
    return int(math.ceil(raw / d) * d)


def connected_census(n: int) -> int:
    """Count connected labeled graphs on n vertices by edge-mask enumeration."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    count = 0
    for mask in range(1 << len(pairs)):
        adj = [0] * n
        m = mask
        for b, (i, j) in enumerate(pairs):
            if m >> b & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            v = frontier
            while v:
                lo = v & -v
                nxt |= adj[lo.bit_length() - 1]
                v ^= lo
            frontier = nxt & ~seen
            seen |= nxt
        if seen == (1 << n) - 1:
            count += 1
    return count


def main():
    print("== splice ==")
    print("exact mean merged length, n0=50 p=0.25:", repr(splice_exact(50, 0.25)))
    print("asymptotic 2*50 - n_c(0.25):", 100 - critical_length(0.25))
    print("exact n0=2 p=0.25:", splice_exact(2, 0.25))
    print("exact n0=360 p=0.1 (>= 10 n_c check):", repr(splice_exact(360, 0.1)),
          "vs asympt", 720 - critical_length(0.1))

    print("\n== doubling tables (levels 0..5) ==")
    for p in (0.5, 0.25, 0.1):
        T, M = doubling_exact(p, 5)
        print(f"p={p}: T={[float(t) for t in T]}")
        print(f"       M={[float(m) for m in M]}")

    print("\n== chain plans (n0, K, rounds, E[time], E[attempts]) ==")
    for p in (0.1, 0.25, 0.5):
        for n in (50, 100, 200):
            n0, K, R, Texp, Aexp = chain_plan(n, p)
            print(f"p={p} n={n}: n0={n0} K={K} R={R} T={float(Texp)!r} A={float(Aexp)!r}")
    print("p=1 n=200:", chain_plan(200, 1.0))
    print("p=0.25 n=192 (star unit n_l=96):", chain_plan(192, 0.25))
    print("p=0.25 n=32  (star unit n_l=16):", chain_plan(32, 0.25))

    print("\n== asymptotic chain cost ==")
    for p in (0.1, 0.25, 0.5):
        for n in (50, 100, 200):
            t1, t2, m = chain_cost_asymptotic(n, p)
            print(f"p={p} n={n}: T={t1 + t2!r} (={t1!r}+{t2!r}) M={m!r}")
    print("monotonicity: T(400,.25)-T(200,.25) =",
          repr(sum(chain_cost_asymptotic(400, 0.25)[:2]) - sum(chain_cost_asymptotic(200, 0.25)[:2])))

    print("\n== lattice / hex / prior ==")
    t1, t2, t3 = lattice_time_terms(30, 0.25)
    print("lattice time terms L=30 p=0.25:", repr(t1), repr(t2), repr(t3), "sum", repr(t1 + t2 + t3))
    a1, a2 = lattice_attempt_terms(16, 0.1, 0.25)
    print("lattice attempts N=16 eps=0.1 p=0.25:", repr(a1), repr(a2))
    ht = hex_time_terms(16, 0.1, 0.25)
    print("hex time terms N=16 eps=0.1 p=0.25:", [repr(x) for x in ht])
    ha = hex_attempt_terms(16, 0.1, 0.25)
    print("hex attempts:", [repr(x) for x in ha])
    T2 = prior_scheme_time(30, 0.25)
    print("prior scheme T2 (L=30, p=0.25):", repr(T2))
    print("ratio T1/T2:", repr((t1 + t2 + t3) / T2))
    print("1-ratio at p=0.3 vs p=0.05 (L=30):",
          repr(1 - (sum(lattice_time_terms(30, 0.3))) / prior_scheme_time(30, 0.3)),
          repr(1 - (sum(lattice_time_terms(30, 0.05))) / prior_scheme_time(30, 0.05)))

    print("\n== arms ==")
    print("square N=16 eps=0.1 p=0.25: raw", repr(16 * math.log(320)),
          "->", arms_required(32, 0.1, 0.25, 4))
    print("hex N=16 eps=0.1 p=0.25: raw", repr(12 * math.log(240)),
          "->", arms_required(24, 0.1, 0.25, 3))
    print("pair_success(0.25, 4):", repr(1 - 0.75 ** 4))
    print("pair_success(0.25, 24):", repr(1 - 0.75 ** 24))
    print("P(all 24 pairs ok):", repr((1 - 0.75 ** 24) ** 24))

    print("\n== connected labeled graph census ==")
    for n in range(1, 7):
        print(f"n={n}:", connected_census(n))

    print("\n== small-chain examples ==")
    T, M = doubling_exact(0.5, 2)
    print("exact T,M for n=4 p=0.5 (level 1):", float(T[1]), float(M[1]))
    print("power law n=4 p=0.5:", (1 / 0.5) ** (math.log2(4) + 1), (2 / 0.5) ** (math.log2(4) + 1) / 2)
    print("power law n=8 p=0.5:", (1 / 0.5) ** (math.log2(8) + 1))


if __name__ == "__main__":
    main()
