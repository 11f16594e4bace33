#pragma once

#include <cstdint>

#include "sylf/palindromic.hpp"
#include "sylf/solvers.hpp"

namespace sylf {

// Deterministic generator (splitmix64 + Box-Muller) so that seeded runs are
// reproducible byte for byte across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform();  // [0, 1)
    double normal();
    Complex cnormal();
    Matrix gaussian(Eigen::Index rows, Eigen::Index cols);
    std::vector<int> permutation(int m);  // 0-based Fisher-Yates
    std::vector<int> involution(int m);   // random self-inverse permutation

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

enum class InstanceKind { generic, condition_a, condition_b, singular };

InstanceKind instance_kind_from_name(const std::string& name);
std::string instance_kind_name(InstanceKind kind);

/// Seeded random problem.  condition_a/condition_b instances are built by
/// spectrum placement to satisfy the corresponding sufficient condition with
/// a comfortable margin; singular instances share an eigenvalue (or an exact
/// reciprocal pair) so the vectorized map is rank deficient.
Problem gen_problem(Rng& rng, int m, const StructuredOperator& f, InstanceKind kind);

/// Random f-palindromic QEP (A1 symmetrized through f).
PalindromicQEP gen_palindromic(Rng& rng, int m, const StructuredOperator& f);

/// Like gen_palindromic, but resamples until the 2m eigenvalues stay away
/// from the unit circle and the selected half is well separated.
PalindromicQEP gen_palindromic_separated(Rng& rng, int m, const StructuredOperator& f,
                                         int max_tries = 100);

}  // namespace sylf
