#ifndef HEIS_PROPERTIES_HPP
#define HEIS_PROPERTIES_HPP

// Seeded randomized checks of the algebraic laws of the operator algebra.

#include <cstdint>
#include <random>

#include "heis/algebra.hpp"
#include "heis/report.hpp"

namespace heis {

struct PropertyConfig {
    std::uint64_t seed = 1;
    int instances = 1000;
    int dim_max = 2;
    int max_terms = 3;
    int max_weight = 6;
};

class OperatorSampler {
public:
    explicit OperatorSampler(std::uint64_t seed) : rng_(seed) {}

    // Uniform in [0, n).
    int below(int n);

    Term term(int dim, int max_weight, bool with_jets);
    OperatorExpr op(int dim, int max_terms, int max_weight, bool with_jets);
    // Linear combination of single generators.
    OperatorExpr generator_combination(int dim, int max_terms);

private:
    std::mt19937_64 rng_;
};

// Each report covers `instances` random draws; sigma alternates between +1
// and -1 across instances.
VerificationReport associativity_property(const PropertyConfig &cfg);
VerificationReport jacobi_property(const PropertyConfig &cfg);
// Every term of every product has total weight equal to the sum of the
// factors' total weights.
VerificationReport grading_property(const PropertyConfig &cfg);
VerificationReport adjoint_property(const PropertyConfig &cfg);
// Renormalizing a canonical expression (left multiplication by 1) and
// bilinearity of the product.
VerificationReport bilinearity_property(const PropertyConfig &cfg);

// Grading check of one product.
bool grading_holds(const Term &a, const Term &b, const OperatorExpr &product);

} // namespace heis

#endif
