#include "subzeta/lift.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "subzeta/error.hpp"

namespace subzeta {

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  unsigned nthreads = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  for (unsigned w = 0; w < nthreads; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(count);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

LiftWalker::LiftWalker(const std::vector<MPoly>& constraints, unsigned n, u64 p, unsigned max_level)
    : p_(p), n_(n), max_level_(max_level) {
  if (max_level == 0) throw Error(ErrorKind::InvalidArgument, "lift walk needs max_level >= 1");
  pw_.push_back(1);
  for (unsigned k = 1; k <= max_level; ++k) pw_.push_back(checked_pow(p, k));
  for (const auto& f : constraints) {
    if (f.nvars() != n) throw Error(ErrorKind::DimensionMismatch, "constraint ring mismatch");
    constraints_.emplace_back(f, pw_[max_level]);
  }
}

bool LiftWalker::satisfies(std::span<const u64> point, unsigned level) const {
  const u64 m = pw_[level];
  for (const auto& f : constraints_) {
    if (f.eval(point) % m != 0) return false;
  }
  return true;
}

std::vector<Point> LiftWalker::roots() const {
  std::vector<Point> out;
  for_each_residue(n_, p_, [&](std::span<const u64> x) {
    if (satisfies(x, 1)) out.emplace_back(x.begin(), x.end());
  });
  return out;
}

void for_each_residue(unsigned n, u64 modulus, const std::function<void(std::span<const u64>)>& fn) {
  Point x(n, 0);
  for (;;) {
    fn(x);
    unsigned i = n;
    for (;;) {
      if (i == 0) return;
      --i;
      if (++x[i] < modulus) break;
      x[i] = 0;
    }
  }
}

}  // namespace subzeta
