#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace partrank;
using namespace partrank::testing;

static const Field Q = Field::rational();

TEST_CASE("graded-lex ordering and leading monomials") {
    Poly det = determinant2();
    // leading term of x11*x22 - x12*x21 is x11*x22
    Poly lead = tmono({2, 2}, 1, {{{0, 0}, 1}, {{1, 1}, 1}});
    CHECK(det.leading_monomial() == lead.leading_monomial());
    CHECK(det.degree() == 2);
    CHECK(det.is_homogeneous());
    CHECK((det - det).is_zero());
}

TEST_CASE("weight_of") {
    WeightVector w = weight_of(determinant2());
    CHECK(w == WeightVector{{1, 1}, {1, 1}});

    Poly sq = tmono({1, 1}, 1, {{{0, 0}, 2}});
    CHECK(weight_of(sq) == WeightVector{{2}, {2}});

    Poly bad = tmono({2, 2}, 1, {{{0, 0}, 1}, {{1, 1}, 1}}) +
               tmono({2, 2}, 1, {{{0, 0}, 1}, {{1, 0}, 1}});
    CHECK_THROWS_AS(weight_of(bad), NotWeightHomogeneous);
}

TEST_CASE("weight_components split mixed polynomials") {
    Poly mixed = determinant2() + tmono({2, 2}, 3, {{{0, 0}, 2}});
    auto comps = weight_components(mixed);
    CHECK(comps.size() == 2);
    Poly sum = comps[0] + comps[1];
    CHECK(sum == mixed);
}

TEST_CASE("polarize follows the derivation, gcd-normalized") {
    // x11^2 -> 2 x11 x21 -> x11 x21
    Poly sq = tmono({1, 1}, 1, {{{0, 0}, 2}});
    Poly p1 = polarize(sq, 0, 0);
    CHECK(p1 == tmono({2, 1}, 1, {{{0, 0}, 1}, {{1, 0}, 1}}));

    // then axis 2: x11 x22 + x12 x21
    Poly p2 = polarize(p1, 1, 0);
    CHECK(p2 == determinant2() + tmono({2, 2}, 2, {{{0, 1}, 1}, {{1, 0}, 1}}));
    // i.e. the permanent
    Poly perm = tmono({2, 2}, 1, {{{0, 0}, 1}, {{1, 1}, 1}}) +
                tmono({2, 2}, 1, {{{0, 1}, 1}, {{1, 0}, 1}});
    CHECK(p2 == perm);

    CHECK_THROWS_AS(polarize(determinant2(), 0, 0), WeightTooLow);
}

TEST_CASE("multilinearize") {
    CHECK(multilinearize(determinant2()) == determinant2());

    Poly sq = tmono({1, 1}, 1, {{{0, 0}, 2}});
    Poly perm = tmono({2, 2}, 1, {{{0, 0}, 1}, {{1, 1}, 1}}) +
                tmono({2, 2}, 1, {{{0, 1}, 1}, {{1, 0}, 1}});
    CHECK(multilinearize(sq) == perm);

    // x11 x12, weight ((2),(1,1)) -> x11 x22 + x21 x12
    Poly f = tmono({1, 2}, 1, {{{0, 0}, 1}, {{0, 1}, 1}});
    CHECK(multilinearize(f) == perm);
}

TEST_CASE("pullback matrix shape and single-term columns") {
    BudgetVector b{BudgetVector::Mode::tight, {{{0}, 1}}};
    ExactMatrix m = build_pullback_matrix(2, 2, 1, Q, b);
    // 4 parameters (u_1,u_2,v_1,v_2), rows = deg-2 monomials = 10, cols = 4
    CHECK(m.rows() == 10);
    CHECK(m.cols() == 4);
    for (std::size_t c = 0; c < 4; ++c) {
        std::size_t nonzero = 0;
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (!m.at(r, c).is_zero()) {
                ++nonzero;
                CHECK(m.at(r, c).is_one());
            }
        CHECK(nonzero == 1); // each x_ij maps to the single monomial u_i v_j
    }

    // m = 2, tight budget {1}:1 -> kernel spanned by the determinant
    ExactMatrix m2 = build_pullback_matrix(2, 2, 2, Q, b);
    auto kb = kernel_basis(m2);
    CHECK(kb.size() == 1);

    CHECK_THROWS_AS(
        (void)build_pullback_matrix(2, 2, 2, Q, b, PullbackOptions{.cell_cap = 10}),
        SizeCapExceeded);
}

TEST_CASE("find_vanishing_poly recovers the determinant in tight mode") {
    auto f = find_vanishing_poly(2, 2, 1, 2, Q, EquationMode::tight);
    REQUIRE(f.has_value());
    Poly det = determinant2();
    CHECK((*f == det || *f == -det));

    // paper mode at the same parameters parametrizes every 2x2 matrix
    CHECK(!find_vanishing_poly(2, 2, 1, 2, Q, EquationMode::paper).has_value());

    // r = 2: every 2x2 matrix has rank <= 2, so no equation at any degree
    CHECK(!find_vanishing_poly(2, 2, 2, 2, Q, EquationMode::tight).has_value());
    CHECK(!find_vanishing_poly(2, 2, 2, 3, Q, EquationMode::tight).has_value());
}

TEST_CASE("tight budget vectors enumerate compositions over splits containing 1") {
    auto b31 = tight_budget_vectors(3, 1);
    CHECK(b31.size() == 3); // splits {1},{1,2},{1,3}
    auto b32 = tight_budget_vectors(3, 2);
    CHECK(b32.size() == 6); // weak compositions of 2 into 3 parts
    auto b21 = tight_budget_vectors(2, 1);
    CHECK(b21.size() == 1);
    CHECK(BudgetVector::paper_mode(3, 1).counts.size() == 6);
}

TEST_CASE("d=3 vanishing polynomial at m=4") {
    auto f = find_vanishing_poly(3, 2, 1, 4, Q, EquationMode::tight);
    REQUIRE(f.has_value());
    CHECK(!f->is_zero());
    CHECK(f->degree() == 4);

    // symbolic: vanishes on all three single-split parametrizations
    for (const BudgetVector& b : tight_budget_vectors(3, 1))
        CHECK(vanishes_on_parametrization(*f, 2, b));

    // numeric: evaluates to 0 at seeded random slice-rank-<=1 tensors mod 101
    Rng rng(2024);
    const long p = 101;
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t split = rng.below(3);
        long a[2], b[4];
        for (long& x : a) x = long(rng.below(p));
        for (long& x : b) x = long(rng.below(p));
        std::vector<long> entries(8);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                for (std::size_t k = 0; k < 2; ++k) {
                    std::size_t flat = 4 * i + 2 * j + k;
                    if (split == 0)
                        entries[flat] = a[i] * b[2 * j + k] % p;
                    else if (split == 1)
                        entries[flat] = a[j] * b[2 * i + k] % p;
                    else
                        entries[flat] = a[k] * b[2 * i + j] % p;
                }
        CHECK(eval_mod_prime(*f, entries, p) == 0);
    }

    // r = 2 covers every 2x2x2 tensor, so no equation can exist
    CHECK(!find_vanishing_poly(3, 2, 2, 3, Q, EquationMode::tight).has_value());

    // and vanishes (exactly) on random bounded-prank tensors over GF(5),
    // also when embedded into larger tensors via injections
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        Tensor t = random_bounded_prank_tensor({2, 2, 2}, Field::gf(5), 1, seed);
        CHECK(f->evaluate(t).is_zero());
        Tensor big = random_bounded_prank_tensor({3, 3, 3}, Field::gf(5), 1, seed + 100);
        OrbitResult res = orbit_vanishes(*f, big);
        CHECK(res.vanishes);
    }
}

TEST_CASE("multilinearize preserves vanishing on the rank variety") {
    auto f = find_vanishing_poly(3, 2, 1, 4, Q, EquationMode::tight);
    REQUIRE(f.has_value());
    for (const Poly& comp : weight_components(*f)) {
        Poly ml = multilinearize(comp);
        const std::size_t m = ml.degree();
        std::vector<std::size_t> dims(3, m);
        for (std::uint64_t seed = 0; seed < 25; ++seed) {
            Tensor t = random_bounded_prank_tensor(dims, Field::gf(7), 1, 7000 + seed);
            CHECK(comp.evaluate(subtensor(t, {{0, 1}, {0, 1}, {0, 1}})).is_zero());
            CHECK(ml.evaluate(t).is_zero());
        }
    }
}

TEST_CASE("dim_formulas") {
    DimFormulas d1 = dim_formulas(2, 2, 1, 2);
    CHECK(d1.S == 8);
    CHECK(d1.dimP2m == 330);
    CHECK(d1.dimPm == 10);

    DimFormulas d0 = dim_formulas(2, 2, 0, 2);
    CHECK(d0.S == 0);
    CHECK(d0.dimP2m == 1);

    // the paper's own rewriting C(2m+S-1,2m) = C(2m+S-1,S-1)
    mpz_class alt;
    mpz_bin_ui(alt.get_mpz_t(), mpz_class(4 + 8 - 1).get_mpz_t(), 8 - 1);
    CHECK(d1.dimP2m == alt);
}

TEST_CASE("check_counting_inequality") {
    CountingReport r21 = check_counting_inequality(2, 1);
    CHECK(r21.holds);
    CHECK(r21.exact); // d=2, r=1 fits the default bit budget
    CHECK(r21.n == 32);
    CHECK(r21.m == 1048576);

    CountingReport r31 = check_counting_inequality(3, 1);
    CHECK(r31.holds);
    CHECK(!r31.exact);
    CHECK(r31.log_dimP2m_hi < r31.log_dimPm_lo);

    // sanity direction: with m = 1 the inequality must fail
    CountingReport bad = check_counting_inequality(2, 1, mpz_class(1));
    CHECK(!bad.holds);

    for (std::size_t d = 2; d <= 4; ++d)
        for (std::size_t r = 1; r <= 2; ++r) CHECK(check_counting_inequality(d, r).holds);
}

TEST_CASE("extract_hchain on the determinant") {
    HChain ch = extract_hchain(determinant2());
    CHECK(ch.m == 2);
    CHECK(ch.h[1] == tmono({2, 2}, 1, {{{0, 0}, 1}}));           // h_1 = x11
    CHECK(ch.r[0] == tmono({2, 2}, -1, {{{0, 1}, 1}, {{1, 0}, 1}})); // r_1 = -x12 x21
    CHECK(ch.h[2].degree() == 0);
    CHECK(!ch.h[2].is_zero());
    CHECK(ch.r[1].is_zero());

    // permanent: r_1 = +x12 x21
    Poly perm = tmono({2, 2}, 1, {{{0, 0}, 1}, {{1, 1}, 1}}) +
                tmono({2, 2}, 1, {{{0, 1}, 1}, {{1, 0}, 1}});
    HChain chp = extract_hchain(perm);
    CHECK(chp.h[1] == tmono({2, 2}, 1, {{{0, 0}, 1}}));
    CHECK(chp.r[0] == tmono({2, 2}, 1, {{{0, 1}, 1}, {{1, 0}, 1}}));

    // single monomial, m = 1
    HChain ch1 = extract_hchain(tmono({1, 1}, 1, {{{0, 0}, 1}}));
    CHECK(ch1.m == 1);
    CHECK(ch1.h[1].degree() == 0);
    CHECK(ch1.r[0].is_zero());
}

TEST_CASE("h-chain invariant on random multilinear polynomials") {
    // multilinear weight-(1,..,1) polynomials of degree m: monomials are
    // d-tuples of permutation patterns; build random ones and check
    // perms(h_k) = corner * h_{k+1} + r_{k+1} at every level
    Rng rng(505);
    for (int trial = 0; trial < 12; ++trial) {
        const std::size_t m = 2 + rng.below(2); // 2 or 3
        const std::size_t d = 2 + rng.below(2); // 2 or 3
        Poly f = Poly::tensor_vars(std::vector<std::size_t>(d, m), Q);
        // random multilinear terms: per axis j>=1 an independent permutation
        // of [m] mapping the axis-0 index
        for (int terms = 0; terms < 4; ++terms) {
            std::vector<std::vector<std::size_t>> perms(d);
            for (std::size_t i = 0; i < d; ++i) {
                std::vector<std::size_t> p(m);
                for (std::size_t v = 0; v < m; ++v) p[v] = v;
                for (std::size_t v = m; v-- > 1;) std::swap(p[v], p[rng.below(v + 1)]);
                perms[i] = p;
            }
            Exponents e(f.var_count(), 0);
            for (std::size_t pos = 0; pos < m; ++pos) {
                std::vector<std::size_t> tup(d);
                for (std::size_t i = 0; i < d; ++i) tup[i] = perms[i][pos];
                e[f.var_id(tup)] += 1;
            }
            f.add_term(e, Scalar::from_int(Q, long(rng.below(9)) - 4));
        }
        if (f.is_zero()) continue;
        HChain ch = extract_hchain(f);
        for (std::size_t k = 0; k < ch.m; ++k) {
            Poly permuted = ch.h[k].relabel(ch.perms[k]);
            const std::size_t corner =
                permuted.var_id(std::vector<std::size_t>(d, ch.m - k - 1));
            Poly rebuilt = permuted.variable(corner) * ch.h[k + 1] + ch.r[k];
            CHECK(permuted == rebuilt);
        }
    }
}

TEST_CASE("orbit_vanishes") {
    Field f2 = Field::gf(2);
    Poly x11 = tmono({1, 1}, 1, {{{0, 0}, 1}});
    Tensor zero({2, 2}, f2);
    OrbitResult r0 = orbit_vanishes(x11, zero);
    CHECK(r0.vanishes);
    CHECK(r0.exhaustive);

    Tensor t = mat_tensor(f2, {{0, 0}, {0, 1}});
    OrbitResult r1 = orbit_vanishes(x11, t);
    CHECK(!r1.vanishes);
    REQUIRE(r1.witness.has_value());
    CHECK((*r1.witness)[0][0] == 1);
    CHECK((*r1.witness)[1][0] == 1);

    // det_2 vanishes on a rank-1 3x3 matrix: all 2x2 minors are zero
    Tensor r1m({3, 3}, Q);
    accumulate_term(r1m,
                    PartitionTerm{AxisSplit{{0}}, random_tensor({3}, Q, 8, 1.0),
                                  random_tensor({3}, Q, 9, 1.0)},
                    +1);
    OrbitResult rd = orbit_vanishes(determinant2(), r1m);
    CHECK(rd.vanishes);
    // independent minor oracle
    ExactMatrix mm = flatten(r1m, AxisSplit{{0}});
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k)
                for (std::size_t l = 0; l < 3; ++l) {
                    if (i == j || k == l) continue;
                    Scalar minor = mm.at(i, k) * mm.at(j, l) - mm.at(i, l) * mm.at(j, k);
                    CHECK(minor.is_zero());
                }

    // budget and sampling
    Tensor big = random_tensor({8, 8, 8}, f2, 10, 0.5);
    Poly h3 = tmono({2, 2, 2}, 1, {{{0, 0, 0}, 1}, {{1, 1, 1}, 1}});
    OrbitOptions strict;
    strict.budget = 100;
    CHECK_THROWS_AS((void)orbit_vanishes(h3, big, strict), BudgetExceeded);
    OrbitOptions sampled = strict;
    sampled.sample = true;
    sampled.sample_count = 50;
    OrbitResult rs = orbit_vanishes(h3, big, sampled);
    CHECK(!rs.exhaustive);
}

TEST_CASE("find_k on the determinant chain") {
    HChain ch = extract_hchain(determinant2());

    FindKResult fk = find_k(mat_tensor(Q, {{1, 2}, {2, 4}}), ch);
    CHECK(fk.k == 0);
    REQUIRE(fk.witness.size() == 2);
    CHECK(fk.witness[0] == std::vector<std::size_t>{0});
    CHECK(fk.witness[1] == std::vector<std::size_t>{0});

    CHECK_THROWS_AS(find_k(mat_tensor(Q, {{1, 0}, {0, 1}}), ch), HypothesisViolated);
}

TEST_CASE("decompose_via_chain for matrices") {
    HChain ch = extract_hchain(determinant2());

    Tensor t = mat_tensor(Q, {{1, 2}, {2, 4}});
    ChainDecomposition cd = decompose_via_chain(t, ch);
    CHECK(cd.k == 0);
    CHECK(cd.bound == 4);
    CHECK(cd.decomposition.length() <= 4);
    CHECK(cd.decomposition.evaluate() == t);

    // zero tensor: empty decomposition
    CHECK(decompose_via_chain(Tensor({3, 3}, Q), ch).decomposition.length() == 0);

    // random rank-<=1 matrices over GF(5), various shapes
    Field f5 = Field::gf(5);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::size_t nr = 2 + seed % 3, nc = 2 + (seed / 3) % 3;
        Tensor m = random_bounded_prank_tensor({nr, nc}, f5, 1, 1700 + seed);
        ChainDecomposition dec = decompose_via_chain(m, ch);
        CHECK(dec.decomposition.length() <= dec.bound);
        CHECK(dec.decomposition.evaluate() == m);
    }
}

TEST_CASE("decompose_via_chain through a chain that needed pivoting") {
    // f = x12 x21 has no corner monomial, so extract_hchain records a
    // nontrivial axis permutation before splitting
    Poly f = tmono({2, 2}, 1, {{{0, 1}, 1}, {{1, 0}, 1}});
    HChain ch = extract_hchain(f);
    bool permuted = false;
    for (const auto& level : ch.perms)
        for (const auto& p : level)
            for (std::size_t v = 0; v < p.size(); ++v)
                if (p[v] != v) permuted = true;
    CHECK(permuted);

    // the orbit of x12 x21 vanishes on single-row matrices
    Field f5 = Field::gf(5);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Rng rng(seed);
        Tensor t({3, 4}, f5);
        std::size_t row = rng.below(3);
        bool nonzero = false;
        for (std::size_t c = 0; c < 4; ++c) {
            long v = long(rng.below(5));
            t.at({row, c}) = Scalar::from_int(f5, v);
            nonzero = nonzero || v != 0;
        }
        if (!nonzero) continue;
        ChainDecomposition cd = decompose_via_chain(t, ch);
        CHECK(cd.decomposition.evaluate() == t);
        CHECK(cd.decomposition.length() <= cd.bound);
    }
}

TEST_CASE("decompose_via_chain exercises higher-order patterns") {
    // d = 3: f = x111 x222 - x112 x221 is multilinear of degree 2; its
    // orbit vanishes on tensors of the form M (x) c on the split {1,2}|{3}
    Poly f3 = tmono({2, 2, 2}, 1, {{{0, 0, 0}, 1}, {{1, 1, 1}, 1}}) -
              tmono({2, 2, 2}, 1, {{{0, 0, 1}, 1}, {{1, 1, 0}, 1}});
    HChain ch3 = extract_hchain(f3);
    Field f5 = Field::gf(5);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Tensor m({3, 3, 3}, f5);
        Tensor a = random_tensor({3, 3}, f5, 2000 + seed, 0.8);
        Tensor c = random_tensor({3}, f5, 3000 + seed, 0.8);
        if (c.is_zero() || a.is_zero()) continue;
        accumulate_term(m, PartitionTerm{AxisSplit{{0, 1}}, a, c}, +1);
        ChainDecomposition dec = decompose_via_chain(m, ch3);
        CHECK(dec.decomposition.evaluate() == m);
        CHECK(dec.decomposition.length() <= dec.bound);
        CHECK(dec.bound == bound_formula(3, 2, dec.k));
    }

    // d = 4 analogue with an order-2 low factor
    Poly f4 = tmono({2, 2, 2, 2}, 1, {{{0, 0, 0, 0}, 1}, {{1, 1, 1, 1}, 1}}) -
              tmono({2, 2, 2, 2}, 1, {{{0, 0, 1, 1}, 1}, {{1, 1, 0, 0}, 1}});
    HChain ch4 = extract_hchain(f4);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        Tensor m({2, 2, 2, 2}, f5);
        Tensor a = random_tensor({2, 2}, f5, 4000 + seed, 0.9);
        Tensor b = random_tensor({2, 2}, f5, 5000 + seed, 0.9);
        if (a.is_zero() || b.is_zero()) continue;
        accumulate_term(m, PartitionTerm{AxisSplit{{0, 1}}, a, b}, +1);
        ChainDecomposition dec = decompose_via_chain(m, ch4);
        CHECK(dec.decomposition.evaluate() == m);
        CHECK(dec.decomposition.length() <= dec.bound);
    }
}

TEST_CASE("equation -> multilinearize -> chain -> decomposition, end to end at d=3") {
    auto f = find_vanishing_poly(3, 2, 1, 4, Q, EquationMode::tight);
    REQUIRE(f.has_value());
    auto comps = weight_components(*f);
    REQUIRE(comps.size() == 1); // the kernel vector is already a weight vector
    Poly ml = multilinearize(comps[0]);
    CHECK(ml.degree() == 4);
    HChain ch = extract_hchain(ml);
    CHECK(ch.m == 4);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        Tensor t = random_bounded_prank_tensor({4, 4, 4}, Field::gf(5), 1, 777 + seed);
        ChainDecomposition cd = decompose_via_chain(t, ch);
        CHECK(cd.decomposition.evaluate() == t);
        CHECK(cd.decomposition.length() <= cd.bound);
        CHECK(cd.bound == bound_formula(3, 4, cd.k));
    }
}

TEST_CASE("bound_formula") {
    CHECK(bound_formula(2, 2, 0) == 4); // "this yields 4r" at r = 1
    CHECK(bound_formula(3, 2, 0) == 6);
    CHECK(bound_formula(3, 2, 0) <= 8); // <= m^d
    CHECK(bound_formula(2, 2, 1) == 0);
    CHECK(bound_formula(4, 3, 2) == 0);
    for (std::size_t m = 1; m <= 6; ++m)
        CHECK(bound_formula(3, m, 0) <= (unsigned long long)(m * m * m));
    CHECK_THROWS_AS(bound_formula(2, 2, 2), IndexOutOfRange);
}

TEST_CASE("fd_gd closed forms") {
    auto [f2, g2] = fd_gd(2, 1);
    CHECK(f2 == 1048576);
    CHECK(g2 == mpz_class("1099511627776"));
    auto [f3, g3] = fd_gd(3, 1);
    CHECK(f3 == mpz_class(1) << 36);
    for (std::size_t d = 2; d <= 4; ++d) {
        auto [f, g] = fd_gd(d, 2);
        mpz_class pow;
        mpz_pow_ui(pow.get_mpz_t(), f.get_mpz_t(), d - 1);
        CHECK(g == f * pow); // G/F = F^{d-1}
    }
}
