#pragma once

#include <string>

#include "partrank/poly.hpp"
#include "partrank/rank.hpp"

namespace partrank {

/// The linear map e_{i_1} (x) .. (x) e_{i_d} -> x_{i_1} .. x_{i_d} on a
/// cubical tensor; all bridge polynomials live on point variables.
Poly phi(const Tensor& t);

/// The symmetrization x_{i_1} .. x_{i_d} -> sum over S_d of the permuted
/// basis tensors, extended linearly (repeated indices summed with their
/// multiplicities). Requires characteristic 0 or > degree. `degree_hint`
/// fixes the order for the zero polynomial.
Tensor psi(const Poly& p, std::size_t degree_hint = 0);

/// Substitutes 0 for every variable outside `keep` (0-based indices).
Poly restrict_poly(const Poly& p, const std::vector<std::size_t>& keep);

/// D = C(d, floor(d/2)).
unsigned long long d_const(std::size_t d);

struct StrengthTerm {
    Poly q, r; // deg q + deg r = deg P, both in [1, deg P - 1]
};

struct StrengthCertificate {
    std::size_t value;
    std::vector<StrengthTerm> witness;
    LowerBoundTag tag;
};

struct StrengthOptions {
    std::uint64_t tuple_budget = 10'000'000;
    std::size_t pool_cap = 2'000'000;
};

/// Decides strength <= k over a finite field with characteristic > deg P.
/// Exhaustive over canonical Q-sides (first nonzero coefficient 1, degree
/// at most floor(d/2)); for each Q-tuple the co-factors R_i are the
/// solution of an exact linear system, so no R enumeration is needed.
std::optional<std::vector<StrengthTerm>> strength_at_most(const Poly& p, std::size_t k,
                                                          const StrengthOptions& opts = {});

/// Iterative deepening on k with the exhaustive-search tag.
StrengthCertificate strength(const Poly& p, const StrengthOptions& opts = {});

/// Sum of the witness terms, for verification.
Poly strength_witness_evaluate(const std::vector<StrengthTerm>& witness, std::size_t n,
                               const Field& field, std::size_t degree);

/// psi applied term-by-term: each (Q,R) with deg Q = e yields C(d,e) <= D
/// partition terms, one per axis subset of size e. The result evaluates to
/// psi(sum Q_i R_i).
PartitionDecomposition strength_witness_to_prank(const std::vector<StrengthTerm>& witness,
                                                 std::size_t n, std::size_t d,
                                                 const Field& field);

/// phi applied term-by-term: (I, A, B) -> (phi(A), phi(B)); terms whose
/// image vanishes are dropped. The result sums to phi of the decomposed
/// tensor.
std::vector<StrengthTerm> prank_witness_to_strength(const PartitionDecomposition& dec);

struct PipelineLink {
    std::string name;
    bool pass;
    std::string note;
};

struct PipelineReport {
    std::vector<PipelineLink> links;
    bool all_pass;
};

/// Desk-scale walk through the restriction argument: restricted strengths,
/// the psi/phi identities, restriction compatibility, and the transported
/// partition-rank bound r*D on all cubical subtensors up to size_cap. This
/// checks each implication link at reachable sizes only; the closed-form
/// bounds are far beyond anything runnable.
PipelineReport verify_restriction_pipeline(const Poly& p, std::size_t r, std::size_t size_cap,
                                     const StrengthOptions& opts = {});

} // namespace partrank
