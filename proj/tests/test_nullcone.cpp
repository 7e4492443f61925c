#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "partrank/nullcone.hpp"

#include "helpers.hpp"

using namespace partrank;
using namespace partrank::testing;

static const Field Q = Field::rational();
static const Field F2 = Field::gf(2);

namespace {

Tensor diag3(std::size_t n, const Field& f) {
    Tensor t({n, n, n}, f);
    for (std::size_t i = 0; i < n; ++i) t.at({i, i, i}) = Scalar::one(f);
    return t;
}

SubspaceTriple triple_span(std::size_t n, const Field& f,
                           const std::array<std::vector<std::vector<long>>, 3>& rows) {
    SubspaceTriple t{n, {ExactMatrix(rows[0].size(), n, f), ExactMatrix(rows[1].size(), n, f),
                         ExactMatrix(rows[2].size(), n, f)}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t r = 0; r < rows[i].size(); ++r)
            for (std::size_t c = 0; c < n; ++c)
                t.bases[i].at(r, c) = Scalar::from_int(f, rows[i][r][c]);
    return t;
}

} // namespace

TEST_CASE("build_1psg formulas") {
    OneParamSubgroup p1 = build_1psg(2, 1, 0, 0);
    CHECK(p1.exponents[0] == std::vector<long long>{1, -1});
    CHECK(p1.exponents[1] == std::vector<long long>{0, 0});
    CHECK(p1.exponents[2] == std::vector<long long>{0, 0});

    OneParamSubgroup p2 = build_1psg(3, 1, 1, 0);
    CHECK(p2.exponents[0] == std::vector<long long>{2, -1, -1});
    CHECK(p2.exponents[1] == std::vector<long long>{2, -1, -1});
    CHECK(p2.exponents[2] == std::vector<long long>{0, 0, 0});

    for (std::size_t n = 2; n <= 6; ++n)
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; a + b < n; ++b) {
                if (a + b >= n) continue;
                OneParamSubgroup p = build_1psg(n, a, b, n - 1 - a - b);
                for (const auto& v : p.exponents) {
                    long long sum = 0;
                    for (long long x : v) sum += x;
                    CHECK(sum == 0);
                }
            }

    CHECK_THROWS_AS(build_1psg(2, 1, 1, 0), DimensionSumTooLarge);
}

TEST_CASE("weight_on_support") {
    OneParamSubgroup psg = build_1psg(2, 1, 0, 0);

    Tensor e111({2, 2, 2}, Q);
    e111.at({0, 0, 0}) = Scalar::one(Q);
    CHECK(weight_on_support(psg, e111) == 1); // and 1 >= 2-1

    Tensor full = random_tensor({2, 2, 2}, F2, 3, 1.0);
    CHECK(weight_on_support(psg, full) == -1); // an entry with first index 2

    CHECK_THROWS_AS(weight_on_support(psg, Tensor({2, 2, 2}, Q)), ZeroTensor);
}

TEST_CASE("certify_nullcone") {
    // T = e_1 (x) M with M invertible: slice rank 1 < 2
    Tensor t({2, 2, 2}, Q);
    accumulate_term(t,
                    PartitionTerm{AxisSplit{{0}},
                                  ten(Q, {2}, {{{0}, 1}}),
                                  mat_tensor(Q, {{1, 2}, {3, 4}})},
                    +1);
    CHECK(certify_nullcone(t, triple_span(2, Q, {{{{1, 0}}, {}, {}}})));

    // the same subspace spanned by a different basis vector fails for this T
    CHECK(!certify_nullcone(t, triple_span(2, Q, {{{{0, 1}}, {}, {}}})));

    // the zero tensor routes the ZeroTensor error out of weight_on_support
    CHECK_THROWS_AS((void)certify_nullcone(Tensor({2, 2, 2}, Q),
                                           triple_span(2, Q, {{{{1, 0}}, {}, {}}})),
                    ZeroTensor);
}

TEST_CASE("certify_nullcone rejects the full-rank diagonal for every admissible triple") {
    Tensor d = diag3(2, F2);
    std::vector<std::vector<long>> vecs{{1, 0}, {0, 1}, {1, 1}};
    // dim sums 0 and 1 are admissible at n = 2
    CHECK(!certify_nullcone(d, triple_span(2, F2, {{{}, {}, {}}})));
    for (std::size_t axis = 0; axis < 3; ++axis)
        for (const auto& v : vecs) {
            std::array<std::vector<std::vector<long>>, 3> rows;
            rows[axis] = {v};
            CHECK(!certify_nullcone(d, triple_span(2, F2, rows)));
        }
}

TEST_CASE("triple_from_slice_decomposition") {
    PartitionDecomposition empty{{2, 2, 2}, Q, {}};
    SubspaceTriple t0 = triple_from_slice_decomposition(empty);
    CHECK(t0.dim_sum() == 0);

    Tensor a = ten(Q, {2}, {{{0}, 1}});
    Tensor m = mat_tensor(Q, {{1, 0}, {0, 1}});
    PartitionDecomposition one{{2, 2, 2}, Q, {PartitionTerm{AxisSplit{{0}}, a, m}}};
    SubspaceTriple t1 = triple_from_slice_decomposition(one);
    CHECK(t1.dim(0) == 1);
    CHECK(t1.dim(1) == 0);
    CHECK(t1.bases[0].at(0, 0).is_one());

    // subspace triples are an order-3 notion
    Tensor big({2, 2}, Q);
    big.at({0, 0}) = Scalar::one(Q);
    PartitionDecomposition bad{{2, 2, 2, 2}, Q,
                               {PartitionTerm{AxisSplit{{0, 1}}, big, big}}};
    CHECK_THROWS_AS((void)triple_from_slice_decomposition(bad), IndexOutOfRange);
}

TEST_CASE("slice decompositions certify nullcone membership") {
    // every witnessed slice rank s < n yields a passing certificate
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Tensor t = random_bounded_prank_tensor({3, 3, 3}, F2, 2, 9100 + seed, true);
        if (t.is_zero()) continue;
        RankCertificate cert = slice_rank(t);
        if (cert.value >= 3) continue;
        SubspaceTriple triple = triple_from_slice_decomposition(cert.witness);
        CHECK(triple.dim_sum() == cert.value);
        CHECK(certify_nullcone(t, triple));
    }
}

TEST_CASE("weight lower bound on structured support") {
    // support inside V1 (x) K^n (x) K^n + K^n (x) V2 (x) K^n with coordinate
    // V's gives weight >= n - sum dims
    const std::size_t n = 4;
    OneParamSubgroup psg = build_1psg(n, 1, 1, 0);
    Rng rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        Tensor t({n, n, n}, F2);
        for (int e = 0; e < 6; ++e) {
            std::size_t which = rng.below(2);
            std::vector<std::size_t> idx{rng.below(n), rng.below(n), rng.below(n)};
            idx[which] = 0; // inside the first coordinate line of V_1 or V_2
            t.at(idx) = Scalar::one(F2);
        }
        if (t.is_zero()) continue;
        CHECK(weight_on_support(psg, t) >= (long long)(n - 2));
    }
}

TEST_CASE("d3_degree_bound") {
    CHECK(d3_degree_bound(1) == std::pair<std::size_t, std::size_t>{2, 8});
    CHECK(d3_degree_bound(3) == std::pair<std::size_t, std::size_t>{2, 8});
    CHECK(d3_degree_bound(4) == std::pair<std::size_t, std::size_t>{3, 27});
    CHECK(d3_degree_bound(8) == std::pair<std::size_t, std::size_t>{3, 27});
    CHECK(d3_degree_bound(9) == std::pair<std::size_t, std::size_t>{4, 64});
}
