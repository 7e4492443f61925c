#pragma once

#include <optional>
#include <utility>

#include "partrank/poly.hpp"
#include "partrank/rank.hpp"

namespace partrank {

/// Per-axis index multiset of a weight-homogeneous polynomial.
using WeightVector = std::vector<std::vector<unsigned>>;

/// The common weight of all monomials; throws NotWeightHomogeneous (with
/// two disagreeing monomials in the message) otherwise.
WeightVector weight_of(const Poly& f);

/// Splits a polynomial into its weight-homogeneous components, ordered by
/// weight.
std::vector<Poly> weight_components(const Poly& f);

/// The derivation sending one occurrence of index j on the given axis to a
/// fresh index n_i+1, summed over single-occurrence substitutions, with the
/// integer content normalized away. Requires weight >= 2 at (axis, j).
Poly polarize(const Poly& f, std::size_t axis, std::size_t index);

/// Repeated polarization until every weight entry is 0 or 1, then removal
/// of zero-weight slices. The result has weight (1^m,..,1^m) on m x .. x m
/// variables, m = deg f, with integer coefficients of gcd 1.
Poly multilinearize(const Poly& f);

// ---------------------------------------------------------------------------
// Parametrized rank varieties and the pullback matrix
// ---------------------------------------------------------------------------

/// Term counts per axis split for one parametrization of tensors
/// T = sum_I sum_{i<count_I} A_{I,i} (x) B_{I^c,i}.
struct BudgetVector {
    enum class Mode { paper, tight };
    Mode mode;
    /// (split axes, term count); splits ordered by (size, lex).
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> counts;

    std::size_t parameter_count(std::size_t d, std::size_t n) const;

    /// b_I = r for every proper nonempty I (both orientations of every
    /// split, so the parametrization is redundant but single).
    static BudgetVector paper_mode(std::size_t d, std::size_t r);
};

/// All weak compositions of r over the splits containing axis 1; a tensor
/// has partition rank <= r iff it lies in the image of one of these
/// parametrizations.
std::vector<BudgetVector> tight_budget_vectors(std::size_t d, std::size_t r);

struct PullbackOptions {
    std::size_t cell_cap = 100'000'000;
};

/// Matrix of the pullback map on degree-m polynomials: columns are the
/// degree-m monomials in the n^d tensor entries (lexicographic by exponent
/// vector), rows the degree-2m monomials in the parameters, and column c
/// holds the coefficient vector of monomial_c composed with the
/// parametrization.
ExactMatrix build_pullback_matrix(std::size_t d, std::size_t n, std::size_t m,
                                  const Field& field, const BudgetVector& budget,
                                  const PullbackOptions& opts = {});

enum class EquationMode { paper, tight };

/// First canonical kernel vector of the (stacked, in tight mode) pullback
/// matrices, as a degree-m polynomial in the tensor entries; nullopt when
/// the kernel is trivial. In tight mode the result vanishes on every
/// tensor of partition rank <= r; in paper mode on the image of the single
/// all-splits parametrization (a superset of the rank variety).
std::optional<Poly> find_vanishing_poly(std::size_t d, std::size_t n, std::size_t r,
                                        std::size_t m, const Field& field, EquationMode mode,
                                        const PullbackOptions& opts = {});

/// Symbolic check that f composed with the budget's parametrization
/// expands to the zero polynomial in the parameters.
bool vanishes_on_parametrization(const Poly& f, std::size_t n, const BudgetVector& budget);

// ---------------------------------------------------------------------------
// Dimension counting
// ---------------------------------------------------------------------------

struct DimFormulas {
    mpz_class S;      // dim of the parameter space
    mpz_class dimP2m; // C(2m+S-1, 2m)
    mpz_class dimPm;  // C(m+n^d-1, m)
};

DimFormulas dim_formulas(std::size_t d, std::size_t n, std::size_t r, std::size_t m);

struct CountingReport {
    mpz_class n, m, S;
    bool holds;
    bool exact;           // exact integer comparison vs certified log bounds
    double log_dimP2m_hi; // certified upper bound on ln dim P_2m
    double log_dimPm_lo;  // certified lower bound on ln dim P_m
    mpz_class dimP2m, dimPm; // populated on the exact path
};

/// With n = 2^{d+3} r and m = n^{2d} (the proof's values, or an explicit
/// override for sanity checks), decides dim P_2m < dim P_m exactly when the
/// integers fit the bit budget and by certified directed-rounded
/// log-factorial sums otherwise.
CountingReport check_counting_inequality(std::size_t d, std::size_t r,
                                         std::optional<mpz_class> m_override = {},
                                         std::size_t bit_budget = 1'000'000);

// ---------------------------------------------------------------------------
// The h-chain and the constructive decomposition
// ---------------------------------------------------------------------------

/// Nested splits h_k = x_{m-k,..,m-k} h_{k+1} + r_{k+1} of a multilinear
/// weight-(1,..,1) polynomial, together with the per-level axis
/// permutations that were applied before each split.
struct HChain {
    std::size_t m;
    std::vector<Poly> h;                                      // h[0..m]
    std::vector<Poly> r;                                      // r[k] is r_{k+1}
    std::vector<std::vector<std::vector<std::size_t>>> perms; // perms[k][axis]
};

HChain extract_hchain(const Poly& f);

struct OrbitOptions {
    std::uint64_t budget = 10'000'000;
    bool sample = false;          // sampling fallback, flagged non-exhaustive
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
};

using Injections = std::vector<std::vector<std::size_t>>; // per-axis images of 0..m'-1

struct OrbitResult {
    bool vanishes;
    bool exhaustive;
    std::optional<Injections> witness; // a nonvanishing assignment when !vanishes
};

/// True iff h evaluates to zero at every injective per-axis placement of
/// its indices into T (equivalent to the full Sym-orbit, since unused
/// indices do not occur in h).
OrbitResult orbit_vanishes(const Poly& h, const Tensor& t, const OrbitOptions& opts = {});

struct FindKResult {
    std::size_t k;
    Injections witness; // nonvanishing assignment for h_{k+1}
};

/// Largest k whose h_k-orbit vanishes entirely at T, with a witness for
/// h_{k+1}; scans k = m-1 down. Throws HypothesisViolated when already the
/// h_0-orbit does not vanish.
FindKResult find_k(const Tensor& t, const HChain& chain, const OrbitOptions& opts = {});

struct ChainDecomposition {
    PartitionDecomposition decomposition;
    std::size_t k;
    unsigned long long bound; // bound_formula(d, m, k)
};

/// The constructive decomposition: slice terms for the low-index region
/// plus one term per index pattern of r_{k+1} for the outside block. The
/// result evaluates exactly to T and its length never exceeds the bound.
ChainDecomposition decompose_via_chain(const Tensor& t, const HChain& chain,
                                       const OrbitOptions& opts = {});

/// d(m-k-1) + sum_{s=1..floor(d/2)} C(d,s) (m-k-1)^{d-s}
unsigned long long bound_formula(std::size_t d, std::size_t m, std::size_t k);

/// The headline closed forms F = (2^{d+3} r)^{2d} and G = (2^{d+3} r)^{2d^2}.
std::pair<mpz_class, mpz_class> fd_gd(std::size_t d, std::size_t r);

} // namespace partrank
