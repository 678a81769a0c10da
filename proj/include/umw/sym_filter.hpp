#ifndef UMW_SYM_FILTER_HPP
#define UMW_SYM_FILTER_HPP

#include <functional>

#include "umw/perm.hpp"

namespace umw {

/// Brute-force enumeration kernels over Sym(n). Every exhaustive filter in
/// the library (isometry oracles, tree automorphism oracles, the wreath
/// oracle) goes through these. The serial kernel is the reference
/// implementation; the parallel kernel chunks the n! lexicographic ranks
/// across OpenMP threads and must return the identical, lexicographically
/// sorted result. `tools/bench` compares the two.

using PermPred = std::function<bool(const Perm&)>;

unsigned long long factorial(int n);  // n <= 20
Perm unrank_perm(int n, unsigned long long rank);

std::vector<Perm> filter_sym_serial(int n, const PermPred& pred);
std::vector<Perm> filter_sym_parallel(int n, const PermPred& pred);

/// Dispatches to the parallel kernel when OpenMP is available and the search
/// space is large enough to be worth forking.
std::vector<Perm> filter_sym(int n, const PermPred& pred);

}  // namespace umw

#endif
