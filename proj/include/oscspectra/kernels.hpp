#pragma once

// Integral kernel of the spectral projection onto eigenvalue n + 2m, two ways:
//
//   direct: sum over |alpha| = m of h_alpha(x) h_alpha(y)   -- C(m+n-1, n-1) terms
//   polar:  sum over 0 <= k <= m/2 of
//             ell_k^b(r) ell_k^b(u) (ru)^{m-2k} Z_{m-2k}(x'.y'),  b = n/2-1+m-2k
//                                                              -- floor(m/2)+1 terms
//
// The polar form needs only |x|, |y| and x'.y', so it runs for any n.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "oscspectra/special_functions.hpp"

namespace oscspectra {

struct KernelQuery {
    int n;
    int m;
    std::vector<double> x;
    std::vector<double> y;
};

enum class KernelMethod { direct, polar };

std::string to_string(KernelMethod method);

struct KernelResult {
    double value;
    std::int64_t terms_evaluated;
    KernelMethod method;
};

/// All alpha in N^n with |alpha| = m, descending lexicographic ((m,0,..) first).
/// Throws ResourceError when the count exceeds 1e7.
std::vector<MultiIndex> multi_indices(int n, int m);

/// C(m+n-1, n-1), the number of multi-indices of length m.
std::uint64_t multi_index_count(int n, int m);

KernelResult phi_direct(KernelQuery const& q);
KernelResult phi_polar(KernelQuery const& q);

/// |a - b| / (1 + |a|)
double kernel_rel_diff(double reference, double candidate);

struct BenchRecord {
    int n = 0;
    int m = 0;
    std::int64_t direct_terms = 0;
    std::int64_t polar_terms = 0;
    double direct_nanos_per_eval = 0.0;
    double polar_nanos_per_eval = 0.0;
    double max_rel_diff = 0.0;
    bool direct_skipped = false;
    std::string skip_reason;
};

/// Times both evaluators over `trials` seeded random point pairs in [-3, 3]^n.
/// The direct method is skipped (not an error) when its enumeration is over the cap.
BenchRecord kernel_bench(int n, int m, int trials, std::uint64_t seed);

}  // namespace oscspectra
