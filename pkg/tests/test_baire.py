import random

import pytest

from hyperrep.baire import (
    BairePoint, ConstStrategy, Determined, Exhausted, FnStrategy,
    IdentityStrategy, Inconsistent, InterleaveStrategy, TableStrategy,
    audit_universal, check_monotone, constant_point, cons, curry_universal,
    delta0_name, encode_strategy, eval_universal, interleave_prefix,
    pair_nat, pair_points, point_from, prefix_point, project, query_code,
    seq_code, seq_decode, strategy_answer_on, tail, tuple_points, unpair_nat,
    unpair_points, PairStrategy, ProjectLeftStrategy, ProjectRightStrategy,
)


# --- pairing: anti-diagonal enumeration oracle --------------------------

def antidiagonal_index():
    table = {}
    k = 0
    for s in range(200):
        for m in range(s, -1, -1):
            # diagonal s enumerated as (0,s), (1,s-1), ..., (s,0)
            pass
    # enumerate in the order (0,0), (0,1), (1,0), (0,2), (1,1), (2,0), ...
    for s in range(200):
        for m in range(0, s + 1):
            table[(m, s - m)] = k
            k += 1
    return table


def test_pair_nat_matches_antidiagonal_oracle():
    oracle = antidiagonal_index()
    assert oracle[(0, 0)] == 0 and pair_nat(0, 0) == 0
    assert oracle[(1, 0)] == 2 and pair_nat(1, 0) == 2
    for (m, n), k in oracle.items():
        assert pair_nat(m, n) == k


def test_pair_unpair_bijection_exhaustive():
    for m in range(200):
        for n in range(200):
            assert unpair_nat(pair_nat(m, n)) == (m, n)
    for k in range(10_000):
        m, n = unpair_nat(k)
        assert pair_nat(m, n) == k


# --- sequence codes ------------------------------------------------------

def test_seq_code_round_trip():
    rng = random.Random(5)
    assert seq_code(()) == 0
    assert seq_decode(0) == ()
    for _ in range(500):
        sigma = tuple(rng.randrange(0, 1000) for _ in range(rng.randrange(0, 12)))
        assert seq_decode(seq_code(sigma)) == sigma


def test_seq_code_injective_and_linear_size():
    codes = set()
    for sigma in [(0,), (1,), (0, 0), (1, 0), (0, 1), (2, 3, 4)]:
        c = seq_code(sigma)
        assert c not in codes
        codes.add(c)
    deep = tuple(range(64))
    assert seq_code(deep).bit_length() < 64 * 16  # linear, not exponential


def test_invalid_sequence_codes_rejected():
    invalid = [k for k in range(200) if seq_decode(k) is None]
    assert invalid  # the code is not surjective
    for k in range(200):
        s = seq_decode(k)
        if s is not None:
            assert seq_code(s) == k


# --- lazy points ----------------------------------------------------------

def test_point_memoisation_is_observationally_pure():
    calls = []

    def fn(i):
        calls.append(i)
        return i * i

    p = point_from(fn)
    assert p.value(5) == 25
    assert p.value(5) == 25
    assert calls.count(5) == 1
    assert p.prefix(3) == (0, 1, 4)
    assert len(p.prefix(3)) == 3


def test_point_sparse_indices():
    p = point_from(lambda i: i % 7)
    big = 10 ** 30
    assert p.value(big) == big % 7
    assert p.value(big) == big % 7
    assert p.value(3) == 3


# --- pair/tuple/tail ------------------------------------------------------

def test_pair_points_interleaving_forced():
    z = pair_points(constant_point(0), constant_point(1))
    assert z.prefix(8) == (0, 1, 0, 1, 0, 1, 0, 1)


def test_unpair_pair_round_trip():
    rng = random.Random(1)
    for _ in range(20):
        xs = [rng.randrange(100) for _ in range(100)]
        ys = [rng.randrange(100) for _ in range(100)]
        x, y = prefix_point(xs), prefix_point(ys)
        x2, y2 = unpair_points(pair_points(x, y))
        assert x2.prefix(100) == x.prefix(100)
        assert y2.prefix(100) == y.prefix(100)


def test_pairing_modulus():
    # computing z(7) consults x and y only up to index 3
    seen = {"x": [], "y": []}
    x = point_from(lambda i: seen["x"].append(i) or 0)
    y = point_from(lambda i: seen["y"].append(i) or 0)
    z = pair_points(x, y)
    z.value(7)
    assert max(seen["x"] + seen["y"]) <= 3
    # and the strategies answer index n from a paired prefix of length <= 2(n+1)
    s = PairStrategy()
    assert s.answer(7, tuple([0] * 8)) is not None
    assert s.answer(7, tuple([0] * 7)) is None
    sl, sr = ProjectLeftStrategy(), ProjectRightStrategy()
    assert sl.answer(3, tuple(range(7))) == 6
    assert sr.answer(3, tuple(range(8))) == 7


def test_tupling_law_exact():
    fam = lambda m: point_from(lambda n, m=m: m + n)
    z = tuple_points(fam)
    assert z.value(pair_nat(1, 2)) == 3
    rng = random.Random(9)
    tables = {m: [rng.randrange(1000) for _ in range(50)] for m in range(50)}
    z2 = tuple_points(lambda m: prefix_point(tables[m]))
    for _ in range(400):
        m, n = rng.randrange(50), rng.randrange(50)
        assert z2.value(pair_nat(m, n)) == tables[m][n]


def test_tuple_of_constant_streams():
    z = tuple_points(lambda m: constant_point(m))
    for m in range(50):
        for n in range(0, 50, 7):
            assert z.value(pair_nat(m, n)) == m


def test_project_round_trip():
    fam = {m: prefix_point([m * 10 + i for i in range(64)]) for m in range(8)}
    z = tuple_points(lambda m: fam[m])
    for m in range(8):
        assert project(z, m).prefix(64) == fam[m].prefix(64)


def test_tail():
    h, rest = tail(prefix_point([3]))
    assert h == 3
    assert rest.prefix(5) == (0, 0, 0, 0, 0)
    ident = point_from(lambda i: i)
    h2, rest2 = tail(ident)
    assert h2 == 0
    assert rest2.prefix(5) == (1, 2, 3, 4, 5)
    assert cons(h2, rest2).prefix(100) == ident.prefix(100)


# --- strategies -----------------------------------------------------------

def test_table_strategy_monotone_and_longest_match():
    t = TableStrategy([(0, (1,), 5), (0, (1, 2), 5), (1, (), 0)], default=9)
    assert t.answer(0, ()) is None          # pending: entries could still apply
    assert t.answer(0, (1,)) == 5
    assert t.answer(0, (1, 2, 3)) == 5
    assert t.answer(0, (2,)) == 9           # no entry can apply: default
    assert t.answer(1, (7, 7)) == 0
    assert t.answer(2, ()) == 9


def test_table_strategy_rejects_inconsistent_tables():
    with pytest.raises(ValueError):
        TableStrategy([(0, (1,), 5), (0, (1, 2), 6)])


def test_check_monotone_flags_bad_strategy():
    bad = FnStrategy(lambda n, s: len(s) if len(s) > 0 else None)
    msg = check_monotone(bad, constant_point(0), depth=4, indices=2)
    assert msg is not None
    good = IdentityStrategy()
    assert check_monotone(good, point_from(lambda i: i), depth=8, indices=4) is None


# --- universal function ---------------------------------------------------

def direct_eval(strategy, x, depth):
    # oracle: direct strategy evaluation, unbounded prefix search
    out = []
    for n in range(depth):
        for l in range(0, 200):
            a = strategy.answer(n, x.prefix(l))
            if a is not None:
                out.append(a)
                break
        else:
            return None
    return tuple(out)


def test_constant_code_forced_example():
    p = constant_point(6)  # answers every query with value 5
    out = eval_universal(p, point_from(lambda i: i), fuel=10, depth=8)
    assert isinstance(out, Determined)
    assert out.prefix == (5,) * 8


def test_identity_associate_agrees_to_depth_32():
    x = point_from(lambda i: (i * 7 + 3) % 11)
    p = encode_strategy(IdentityStrategy())
    depth = 32
    out = eval_universal(p, x, fuel=depth * (depth + 1), depth=depth)
    assert isinstance(out, Determined)
    assert out.prefix == x.prefix(depth)


def test_fuel_zero_exhausts():
    p = encode_strategy(IdentityStrategy())
    assert eval_universal(p, constant_point(0), fuel=0, depth=1) == Exhausted(0)


def test_more_fuel_only_extends():
    x = point_from(lambda i: i % 5)
    p = encode_strategy(IdentityStrategy())
    prefixes = []
    for fuel in range(0, 200, 17):
        out = eval_universal(p, x, fuel=fuel, depth=12)
        if isinstance(out, Determined):
            prefixes.append(out.prefix)
    for a, b in zip(prefixes, prefixes[1:]):
        assert b[:len(a)] == a


def random_table_strategy(rng, max_entries=6, prefix_len=4, indices=4):
    entries = []
    roots = {}
    for _ in range(rng.randrange(1, max_entries)):
        n = rng.randrange(indices)
        sigma = tuple(rng.randrange(3) for _ in range(rng.randrange(prefix_len + 1)))
        v = rng.randrange(50)
        key = n
        ok = True
        for en, ep, ev in entries:
            if en == n and ev != v and (ep[:len(sigma)] == sigma or sigma[:len(ep)] == ep):
                ok = False
        if ok:
            entries.append((n, sigma, v))
    default = rng.randrange(50) if rng.random() < 0.5 else None
    return TableStrategy(entries, default=default)


def test_associate_round_trip_random_tables():
    rng = random.Random(42)
    for _ in range(100):
        s = random_table_strategy(rng)
        p = encode_strategy(s)
        x = prefix_point([rng.randrange(3) for _ in range(40)])
        for n in range(4):
            expected = None
            for l in range(33):
                a = s.answer(n, x.prefix(l))
                if a is not None:
                    expected = a
                    break
            got = strategy_answer_on(p, n, x.prefix(32))
            assert got == expected


def test_eval_universal_matches_direct_oracle():
    rng = random.Random(7)
    for _ in range(50):
        s = TableStrategy([], default=rng.randrange(9))
        x = prefix_point([rng.randrange(9) for _ in range(10)])
        direct = direct_eval(s, x, 6)
        out = eval_universal(encode_strategy(s), x, fuel=1000, depth=6)
        assert isinstance(out, Determined) and out.prefix == direct


def test_audit_detects_inconsistent_code():
    # a raw stream answering the same index differently at comparable prefixes
    def fn(c):
        from hyperrep.baire import decode_query
        q = decode_query(c)
        if q is None:
            return 0
        n, sigma = q
        return 1 + len(sigma)  # value grows with the prefix: inconsistent
    p = point_from(fn)
    out = audit_universal(p, constant_point(0), depth=2, prefix_bound=4)
    assert isinstance(out, Inconsistent)
    # first-hit evaluation still reports the first answer
    ev = eval_universal(p, constant_point(0), fuel=100, depth=2)
    assert isinstance(ev, Determined)


def test_audit_clean_on_honest_code():
    p = encode_strategy(IdentityStrategy())
    x = point_from(lambda i: i + 1)
    out = audit_universal(p, x, depth=4, prefix_bound=16)
    assert out == Determined((1, 2, 3, 4))


# --- currying --------------------------------------------------------------

def test_curry_projection_to_second():
    # F = projection to q: g(p) realizes the identity for every p
    F = FnStrategy(lambda n, tau: tau[2 * n + 1] if 2 * n + 1 < len(tau) else None)
    g = curry_universal(F)
    rng = random.Random(3)
    for _ in range(10):
        p = prefix_point([rng.randrange(9) for _ in range(20)])
        q = prefix_point([rng.randrange(9) for _ in range(20)])
        out = eval_universal(g(p), q, fuel=10_000, depth=16)
        assert isinstance(out, Determined)
        assert out.prefix == q.prefix(16)


def test_curry_projection_to_first():
    F = FnStrategy(lambda n, tau: tau[2 * n] if 2 * n < len(tau) else None)
    g = curry_universal(F)
    for seed in range(3):
        rng = random.Random(seed)
        p = prefix_point([rng.randrange(9) for _ in range(20)])
        out = eval_universal(g(p), constant_point(0), fuel=10_000, depth=16)
        assert isinstance(out, Determined)
        assert out.prefix == p.prefix(16)


def test_curry_equation_against_direct_oracle():
    rng = random.Random(17)
    for _ in range(100):
        s = random_table_strategy(rng, indices=3)
        g = curry_universal(s)
        p = prefix_point([rng.randrange(3) for _ in range(30)])
        q = prefix_point([rng.randrange(3) for _ in range(30)])
        paired = pair_points(p, q)
        direct = direct_eval(s, paired, 3)
        out = eval_universal(g(p), q, fuel=800, depth=3)
        if direct is None:
            assert isinstance(out, Exhausted)
        else:
            assert isinstance(out, Determined) and out.prefix == direct


def test_curry_nowhere_defined():
    F = FnStrategy(lambda n, tau: None)
    g = curry_universal(F)
    p = constant_point(0)
    assert isinstance(g(p), BairePoint)  # total
    out = eval_universal(g(p), constant_point(0), fuel=50, depth=1)
    assert isinstance(out, Exhausted)


def test_interleave_strategy_swaps():
    s = InterleaveStrategy()
    x = prefix_point([1, 2, 3, 4, 5, 6])
    assert direct_eval(s, x, 6) == (2, 1, 4, 3, 6, 5)


def test_delta0_name():
    assert delta0_name(3).prefix(5) == (3, 0, 0, 0, 0)
