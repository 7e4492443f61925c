// Acceptance suite: each check runs inside its own time budget and
// prints one PASS/FAIL line. The process exits nonzero if any fail.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "partrank/bridge.hpp"
#include "partrank/json_io.hpp"
#include "partrank/nullcone.hpp"

using namespace partrank;

#ifndef PARTRANK_CLI
#define PARTRANK_CLI "partrank"
#endif
#ifndef PARTRANK_DATA
#define PARTRANK_DATA "."
#endif

namespace {

static const Field Q = Field::rational();

struct Criterion {
    int id;
    std::string name;
    double limit_seconds;
    std::function<bool(std::string&)> run;
};

bool require(bool cond, std::string& note, const std::string& msg) {
    if (!cond && note.empty()) note = msg;
    return cond;
}

Poly det2() {
    Poly p = Poly::tensor_vars({2, 2}, Q);
    Exponents a(4, 0), b(4, 0);
    a[p.var_id({0, 0})] = 1;
    a[p.var_id({1, 1})] = 1;
    b[p.var_id({0, 1})] = 1;
    b[p.var_id({1, 0})] = 1;
    p.add_term(a, Scalar::one(Q));
    p.add_term(b, -Scalar::one(Q));
    return p;
}

// --- 1: matrix ground truth --------------------------------------------

bool c1(std::string& note) {
    bool ok = true;
    std::uint64_t seed = 1;
    const int counts[3] = {67, 67, 66}; // 200 matrices across the three fields
    int fi = 0;
    for (Field f : {Field::gf(2), Field::gf(5), Q}) {
        for (int i = 0; i < counts[fi] && ok; ++i, ++seed) {
            Rng rng(seed);
            std::size_t nr = 1 + rng.below(6), nc = 1 + rng.below(6);
            Tensor t = random_tensor({nr, nc}, f, seed + 5000, 0.55);
            RankCertificate cert = prank(t);
            ok = require(cert.value == rank(flatten(t, AxisSplit{{0}})), note,
                         "prank != matrix rank at seed " + std::to_string(seed));
            ok = ok && require(cert.witness.evaluate() == t, note, "witness mismatch");
        }
        ++fi;
    }
    return ok;
}

// --- 2: the reconstruction identity and the 3r decomposition ------------

bool c2(std::string& note) {
    bool ok = true;
    std::uint64_t seed = 1;
    const int counts[3] = {34, 33, 33}; // 100 matrices across the three fields
    int fi = 0;
    for (Field f : {Field::gf(2), Field::gf(5), Q}) {
        for (int i = 0; i < counts[fi] && ok; ++i, ++seed) {
            Rng rng(seed * 3);
            std::size_t nr = 2 + rng.below(5), nc = 2 + rng.below(5);
            Tensor t = random_tensor({nr, nc}, f, seed + 11000, 0.5);
            FullRankSubmatrix sub = max_full_rank_submatrix(t);
            if (sub.rank > 0) {
                ReconstructionReport rep = reconstruct_outside(t, sub.rows, sub.cols);
                ok = require(rep.violations.empty(), note,
                             "reconstruction violation at seed " + std::to_string(seed));
            }
            PartitionDecomposition dec = three_r_decomposition(t);
            ok = ok && require(dec.length() <= 3 * sub.rank, note, "3r length exceeded");
            ok = ok && require(dec.evaluate() == t, note, "3r evaluation mismatch");
        }
        ++fi;
    }
    return ok;
}

// --- 3: order-3 rank coincidence ----------------------------------------

bool c3(std::string& note) {
    Field f2 = Field::gf(2);
    for (unsigned bits = 0; bits < 256; ++bits) {
        Tensor t({2, 2, 2}, f2);
        for (std::size_t i = 0; i < 8; ++i)
            if (bits & (1u << i)) t[i] = Scalar::one(f2);
        RankCertificate pr = prank(t), sr = slice_rank(t);
        if (pr.value != sr.value || !(pr.witness.evaluate() == t))
            return require(false, note, "2x2x2 mismatch at " + std::to_string(bits));
    }
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Tensor t = random_tensor({3, 3, 3}, f2, 20000 + seed, 0.5);
        RankCertificate pr = prank(t), sr = slice_rank(t);
        if (pr.value != sr.value)
            return require(false, note, "3x3x3 mismatch at seed " + std::to_string(seed));
        if (!(pr.witness.evaluate() == t) || !(sr.witness.evaluate() == t))
            return require(false, note, "witness mismatch at seed " + std::to_string(seed));
    }
    return true;
}

// --- 4: determinant recovery --------------------------------------------

bool c4(std::string& note) {
    auto f = find_vanishing_poly(2, 2, 1, 2, Q, EquationMode::tight);
    bool ok = require(f.has_value(), note, "tight-mode kernel empty");
    if (!ok) return false;
    Poly d = det2();
    ok = require(*f == d || *f == -d, note, "kernel vector is not the determinant");
    for (const BudgetVector& b : tight_budget_vectors(2, 1))
        ok = ok && require(vanishes_on_parametrization(*f, 2, b), note,
                           "f does not compose to zero");
    ok = ok && require(!find_vanishing_poly(2, 2, 1, 2, Q, EquationMode::paper).has_value(),
                       note, "paper mode unexpectedly found a polynomial");
    return ok;
}

// --- 5: an order-3 equation at m = 4 -------------------------------------

bool c5(std::string& note) {
    auto f = find_vanishing_poly(3, 2, 1, 4, Q, EquationMode::tight);
    bool ok = require(f.has_value() && !f->is_zero(), note, "no equation found at m=4");
    if (!ok) return false;
    for (const BudgetVector& b : tight_budget_vectors(3, 1))
        ok = ok && require(vanishes_on_parametrization(*f, 2, b), note,
                           "symbolic composition is nonzero");
    const long p = 101;
    Rng rng(424242);
    for (int trial = 0; trial < 1000 && ok; ++trial) {
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
        ok = require(eval_mod_prime(*f, entries, p) == 0, note,
                     "nonzero value on a slice-rank-1 point, trial " + std::to_string(trial));
    }
    return ok;
}

// --- 6: dimension counting ------------------------------------------------

bool c6(std::string& note) {
    bool ok = true;
    for (std::size_t d = 2; d <= 4 && ok; ++d)
        for (std::size_t r = 1; r <= 2 && ok; ++r)
            ok = require(check_counting_inequality(d, r).holds, note,
                         "inequality failed at d=" + std::to_string(d) +
                             ", r=" + std::to_string(r));
    DimFormulas df = dim_formulas(2, 2, 1, 2);
    ok = ok && require(df.S == 8 && df.dimP2m == 330 && df.dimPm == 10, note,
                       "dim_formulas mismatch at d=2,n=2,r=1,m=2");
    return ok;
}

// --- 7: the h-chain of the determinant and the closed-form bound ----------

bool c7(std::string& note) {
    Poly d = det2();
    HChain ch = extract_hchain(d);
    Poly x11 = Poly::tensor_vars({2, 2}, Q);
    {
        Exponents e(4, 0);
        e[x11.var_id({0, 0})] = 1;
        x11.add_term(e, Scalar::one(Q));
    }
    Poly r1 = Poly::tensor_vars({2, 2}, Q);
    {
        Exponents e(4, 0);
        e[r1.var_id({0, 1})] = 1;
        e[r1.var_id({1, 0})] = 1;
        r1.add_term(e, -Scalar::one(Q));
    }
    bool ok = require(ch.h[1] == x11, note, "h_1 != x11");
    ok = ok && require(ch.r[0] == r1, note, "r_1 != -x12x21");
    ok = ok && require(ch.h[2].degree() == 0 && !ch.h[2].is_zero(), note,
                       "h_2 is not a nonzero constant");
    ok = ok && require(bound_formula(2, 2, 0) == 4, note, "bound(2,2,0) != 4");
    for (std::size_t m = 1; m <= 6 && ok; ++m)
        ok = require(bound_formula(3, m, 0) <= (unsigned long long)(m * m * m), note,
                     "bound(3,m,0) > m^3 at m=" + std::to_string(m));
    return ok;
}

// --- 8: the constructive decomposition on rank-<=1 matrices ---------------

bool c8(std::string& note) {
    HChain ch = extract_hchain(det2());
    Field f5 = Field::gf(5);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        Rng rng(seed + 1);
        std::size_t nr = 2 + rng.below(4), nc = 2 + rng.below(4);
        Tensor t = random_bounded_prank_tensor({nr, nc}, f5, 1, 30000 + seed);
        ChainDecomposition cd = decompose_via_chain(t, ch);
        if (cd.decomposition.length() > 4)
            return require(false, note, "length > 4 at seed " + std::to_string(seed));
        if (!(cd.decomposition.evaluate() == t))
            return require(false, note, "evaluation mismatch at seed " + std::to_string(seed));
    }
    return true;
}

// --- 9: bridge identities ---------------------------------------------------

Poly random_homog(std::size_t n, std::size_t d, const Field& f, std::uint64_t seed) {
    Poly p = Poly::point_vars(n, f);
    Rng rng(seed);
    for (const Exponents& e : monomials_of_degree(n, d))
        p.add_term(e, Scalar::from_int(f, long(rng.below(f.characteristic()))));
    return p;
}

bool c9(std::string& note) {
    const Field f7 = Field::gf(7);
    bool ok = true;

    // phi(psi(P)) = d! P on one hundred random polynomials, d <= 4, n <= 4
    int count = 0;
    for (std::uint64_t seed = 1; count < 100 && ok; ++seed) {
        const std::size_t d = 2 + seed % 3, n = 2 + seed % 3;
        Poly p = random_homog(n, d, f7, 40000 + seed);
        if (p.is_zero()) continue;
        ++count;
        Scalar dfac = Scalar::one(f7);
        for (std::size_t i = 2; i <= d; ++i) dfac = dfac * Scalar::from_int(f7, long(i));
        ok = require(phi(psi(p)) == p.scaled(dfac), note,
                     "phi(psi(P)) != d! P at seed " + std::to_string(seed));
    }

    // exact paired runs where full searches are feasible:
    // d=2 (prank = matrix rank) and d=3 with n=2
    for (std::uint64_t seed = 0; seed < 8 && ok; ++seed) {
        Poly p = random_homog(3, 2, f7, 50000 + seed);
        if (p.is_zero()) continue;
        StrengthCertificate sp = strength(p);
        Tensor t = psi(p);
        std::size_t pr = prank(t).value;
        std::size_t sphi = strength(phi(t)).value;
        ok = require(sphi <= pr && pr <= d_const(2) * sp.value, note,
                     "exact d=2 chain violated at seed " + std::to_string(seed));
    }
    for (std::uint64_t seed = 0; seed < 8 && ok; ++seed) {
        Poly p = random_homog(2, 3, f7, 60000 + seed);
        if (p.is_zero()) continue;
        StrengthCertificate sp = strength(p);
        Tensor t = psi(p);
        std::size_t pr = prank(t).value;
        std::size_t sphi = strength(phi(t)).value;
        ok = require(sphi <= pr && pr <= d_const(3) * sp.value, note,
                     "exact d=3 chain violated at seed " + std::to_string(seed));
    }

    // witness-transported chains at sizes where exact partition rank is out
    // of reach: strength(phi(T)) <= |transported witness| <= D * strength(P)
    struct Shape {
        std::size_t n, d, runs;
    };
    for (Shape s : {Shape{3, 3, 6}, Shape{4, 3, 3}, Shape{2, 4, 4}}) {
        for (std::uint64_t seed = 0; seed < s.runs && ok; ++seed) {
            Poly p = random_homog(s.n, s.d, f7, 70000 + 100 * s.n + 10 * s.d + seed);
            if (p.is_zero()) continue;
            StrengthCertificate sp = strength(p);
            Tensor t = psi(p);
            PartitionDecomposition dec = strength_witness_to_prank(sp.witness, s.n, s.d, f7);
            ok = require(dec.evaluate() == t, note, "transported witness mismatch");
            ok = ok && require(dec.length() <= d_const(s.d) * sp.value, note,
                               "transported witness too long");
            std::vector<StrengthTerm> back = prank_witness_to_strength(dec);
            Scalar dfac = Scalar::one(f7);
            for (std::size_t i = 2; i <= s.d; ++i) dfac = dfac * Scalar::from_int(f7, long(i));
            ok = ok && require(strength_witness_evaluate(back, s.n, f7, s.d) == p.scaled(dfac),
                               note, "back-transport mismatch");
            ok = ok && require(back.size() <= dec.length(), note,
                               "back-transported witness too long");
        }
    }
    return ok;
}

// --- 10: nullcone certificates ------------------------------------------------

bool c10(std::string& note) {
    Field f2 = Field::gf(2);
    bool ok = true;
    std::size_t rank1_count = 0;
    for (unsigned bits = 1; bits < 256 && ok; ++bits) {
        Tensor t({2, 2, 2}, f2);
        for (std::size_t i = 0; i < 8; ++i)
            if (bits & (1u << i)) t[i] = Scalar::one(f2);
        RankCertificate cert = slice_rank(t);
        if (cert.value != 1) continue;
        ++rank1_count;
        SubspaceTriple triple = triple_from_slice_decomposition(cert.witness);
        ok = require(certify_nullcone(t, triple), note,
                     "certificate failed at bits " + std::to_string(bits));
    }
    ok = ok && require(rank1_count > 0, note, "no slice-rank-1 tensors found");

    // the diagonal has slice rank 2 = n: every admissible triple must fail
    Tensor diag({2, 2, 2}, f2);
    diag.at({0, 0, 0}) = Scalar::one(f2);
    diag.at({1, 1, 1}) = Scalar::one(f2);
    std::vector<std::vector<long>> vecs{{1, 0}, {0, 1}, {1, 1}};
    SubspaceTriple empty{2, {ExactMatrix(0, 2, f2), ExactMatrix(0, 2, f2), ExactMatrix(0, 2, f2)}};
    ok = ok && require(!certify_nullcone(diag, empty), note, "empty triple certified the diagonal");
    for (std::size_t axis = 0; axis < 3 && ok; ++axis)
        for (const auto& v : vecs) {
            SubspaceTriple tr = empty;
            tr.bases[axis] = ExactMatrix(1, 2, f2);
            for (std::size_t c = 0; c < 2; ++c)
                tr.bases[axis].at(0, c) = Scalar::from_int(f2, v[c]);
            ok = require(!certify_nullcone(diag, tr), note, "a triple certified the diagonal");
            if (!ok) break;
        }
    return ok;
}

// --- 11: closed forms -----------------------------------------------------------

bool c11(std::string& note) {
    auto [f, g] = fd_gd(2, 1);
    bool ok = require(f == 1048576 && g == mpz_class("1099511627776"), note,
                      "fd_gd(2,1) mismatch");
    auto [k, m] = d3_degree_bound(1);
    ok = ok && require(k == 2 && m == 8, note, "d3_degree_bound(1) mismatch");
    return ok;
}

// --- 12: byte-identical CLI reports ----------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool c12(std::string& note) {
    const std::string cli = PARTRANK_CLI;
    const std::string sample = std::string(PARTRANK_DATA) + "/diag222_gf2.json";
    const std::string tmp = "/tmp/partrank_acceptance";
    if (std::system(("mkdir -p " + tmp).c_str()) != 0)
        return require(false, note, "cannot create the scratch directory");

    // inputs for the chained commands
    write_json_file(tmp + "/rank1.json",
                    tensor_to_json(random_bounded_prank_tensor({3, 3}, Field::gf(5), 1, 42)));
    {
        Poly cubic = Poly::point_vars(3, Field::gf(7));
        Exponents e(3, 1);
        cubic.add_term(e, Scalar::one(Field::gf(7)));
        write_json_file(tmp + "/cubic.json", poly_to_json(cubic));
    }

    auto run_twice = [&](const std::string& name, const std::string& args) {
        std::string f1 = tmp + "/" + name + "_1.json", f2 = tmp + "/" + name + "_2.json";
        if (std::system((cli + " " + args + " > " + f1 + " 2>/dev/null").c_str()) != 0)
            return require(false, note, name + " failed");
        if (std::system((cli + " " + args + " > " + f2 + " 2>/dev/null").c_str()) != 0)
            return require(false, note, name + " failed on the second run");
        return require(!slurp(f1).empty() && slurp(f1) == slurp(f2), note,
                       name + " reports are not byte-identical");
    };

    // every subcommand, fixed seeds throughout
    if (!run_twice("rank", "rank --in " + sample)) return false;
    if (!run_twice("scan", "subtensor-scan --dims 3 3 3 --field gf2 --seed 5 --size 2"))
        return false;
    if (!run_twice("q12", "question12 --dims 4 4 4 --field gf2 --seed 9 --r 1")) return false;
    if (!run_twice("eq", "find-equation --d 2 --n 2 --r 1 --m 2 --mode tight")) return false;
    if (!run_twice("bounds", "bounds --d 3 --r 1")) return false;
    if (!run_twice("count", "counting-check --d 2 --r 1")) return false;
    if (!run_twice("hchain", "hchain --in " + tmp + "/eq_1.json")) return false;
    if (std::system((cli + " hchain --in " + tmp + "/eq_1.json --out " + tmp +
                     "/chain.json 2>/dev/null")
                        .c_str()) != 0)
        return require(false, note, "hchain --out failed");
    if (!run_twice("dec", "decompose --in " + tmp + "/rank1.json --chain " + tmp + "/chain.json"))
        return false;
    if (!run_twice("bridge", "bridge --in " + tmp + "/cubic.json --r 1 --size-cap 3"))
        return false;
    if (!run_twice("verify", "verify-report --in " + tmp + "/rank_1.json")) return false;
    return true;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "matrix ground truth: prank = rref rank on 200 seeded matrices", 10.0, c1},
        {2, "reconstruction identity + 3r decomposition on 100 matrices", 10.0, c2},
        {3, "slice rank = partition rank on all 2x2x2 and 50 random 3x3x3 over GF(2)", 300.0, c3},
        {4, "tight-mode kernel at d=2,n=2,r=1,m=2 is the determinant; paper mode empty", 1.0, c4},
        {5, "d=3 equation at m=4 vanishes symbolically and on 1000 random points", 120.0, c5},
        {6, "counting inequality for (d,r) in {2,3,4}x{1,2}; exact dimension formulas", 1.0, c6},
        {7, "determinant h-chain and the closed-form bound", 1.0, c7},
        {8, "chain decomposition of 50 rank-<=1 matrices over GF(5), length <= 4", 10.0, c8},
        {9, "bridge identities and witness transport", 300.0, c9},
        {10, "nullcone certificates on 2x2x2 GF(2)", 60.0, c10},
        {11, "closed forms fd_gd(2,1) and d3_degree_bound(1)", 1.0, c11},
        {12, "byte-identical reports for repeated CLI runs", 60.0, c12},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string notestr;
        bool pass = false;
        try {
            pass = c.run(notestr);
        } catch (const std::exception& ex) {
            notestr = std::string("exception: ") + ex.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.limit_seconds) {
            pass = false;
            notestr += (notestr.empty() ? "" : "; ") + std::string("over the time limit of ") +
                       std::to_string(c.limit_seconds) + " s";
        }
        if (!pass) ++failures;
        std::printf("%s  criterion %2d  [%6.2f s / %6.0f s]  %s%s%s\n", pass ? "PASS" : "FAIL",
                    c.id, secs, c.limit_seconds, c.name.c_str(), notestr.empty() ? "" : " -- ",
                    notestr.c_str());
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
