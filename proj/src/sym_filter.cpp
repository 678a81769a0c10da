#include "umw/sym_filter.hpp"

#include <algorithm>

#include "umw/error.hpp"

#ifdef UMW_HAVE_OPENMP
#include <omp.h>
#endif

namespace umw {

unsigned long long factorial(int n) {
  if (n < 0 || n > 20)
    throw Error(ErrorClass::TooLarge, "factorial(" + std::to_string(n) + ")");
  unsigned long long f = 1;
  for (int i = 2; i <= n; ++i) f *= static_cast<unsigned long long>(i);
  return f;
}

Perm unrank_perm(int n, unsigned long long rank) {
  // factorial number system; yields the rank-th permutation in lex order
  std::vector<int> pool(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i;
  Perm p;
  p.reserve(static_cast<size_t>(n));
  for (int i = n; i >= 1; --i) {
    unsigned long long f = factorial(i - 1);
    size_t k = static_cast<size_t>(rank / f);
    rank %= f;
    p.push_back(pool[k]);
    pool.erase(pool.begin() + static_cast<long>(k));
  }
  return p;
}

std::vector<Perm> filter_sym_serial(int n, const PermPred& pred) {
  std::vector<Perm> out;
  if (n == 0) {
    Perm empty;
    if (pred(empty)) out.push_back(empty);
    return out;
  }
  Perm p = identity_perm(n);
  do {
    if (pred(p)) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;  // lex order by construction
}

std::vector<Perm> filter_sym_parallel(int n, const PermPred& pred) {
#ifndef UMW_HAVE_OPENMP
  return filter_sym_serial(n, pred);
#else
  if (n <= 6) return filter_sym_serial(n, pred);
  const unsigned long long total = factorial(n);
  const int nchunks = std::max(1, omp_get_max_threads()) * 8;
  std::vector<std::vector<Perm>> buckets(static_cast<size_t>(nchunks));

#pragma omp parallel for schedule(dynamic)
  for (int c = 0; c < nchunks; ++c) {
    unsigned long long lo = total / static_cast<unsigned long long>(nchunks) * static_cast<unsigned long long>(c) +
                            std::min<unsigned long long>(static_cast<unsigned long long>(c), total % static_cast<unsigned long long>(nchunks));
    unsigned long long len = total / static_cast<unsigned long long>(nchunks) +
                             (static_cast<unsigned long long>(c) < total % static_cast<unsigned long long>(nchunks) ? 1 : 0);
    if (len == 0) continue;
    Perm p = unrank_perm(n, lo);
    for (unsigned long long r = 0; r < len; ++r) {
      if (pred(p)) buckets[static_cast<size_t>(c)].push_back(p);
      std::next_permutation(p.begin(), p.end());
    }
  }

  std::vector<Perm> out;
  for (auto& b : buckets)
    out.insert(out.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
  // chunks are consecutive lex ranges, so out is already sorted
  return out;
#endif
}

std::vector<Perm> filter_sym(int n, const PermPred& pred) {
#ifdef UMW_HAVE_OPENMP
  if (n >= 8) return filter_sym_parallel(n, pred);
#endif
  return filter_sym_serial(n, pred);
}

}  // namespace umw
