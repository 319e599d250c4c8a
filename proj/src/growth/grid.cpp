#include "symgrowth/grid.hpp"

#include "symgrowth/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

namespace symgrowth {

Grid make_grid(const Domain& domain, int resolution, const std::vector<int>& collapsed) {
  if (resolution < 1) throw PreconditionError("grid resolution must be >= 1");
  const int d = domain.dim;
  std::vector<std::vector<double>> axes(static_cast<std::size_t>(d));
  double cover2 = 0.0;
  for (int a = 0; a < d; ++a) {
    auto& ax = axes[static_cast<std::size_t>(a)];
    const double lo = domain.lo(a);
    const double hi = domain.hi(a);
    if (std::find(collapsed.begin(), collapsed.end(), a) != collapsed.end()) {
      ax.push_back(lo);
      continue;
    }
    const bool periodic = domain.periodic[static_cast<std::size_t>(a)];
    const int count = periodic ? resolution : resolution + 1;
    for (int i = 0; i < count; ++i) ax.push_back(lo + (hi - lo) * static_cast<double>(i) / resolution);
    const double half = 0.5 * (hi - lo) / resolution;
    cover2 += half * half;
  }

  Grid grid;
  grid.resolution = resolution;
  grid.covering_radius = std::sqrt(cover2);
  std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
  while (true) {
    Vec x(d);
    for (int a = 0; a < d; ++a) x(a) = axes[static_cast<std::size_t>(a)][idx[static_cast<std::size_t>(a)]];
    if (!domain.ball_axes.empty()) {
      double r2 = 0.0;
      for (int a : domain.ball_axes) r2 += x(a) * x(a);
      const double r = std::sqrt(r2);
      if (r > domain.ball_radius)
        for (int a : domain.ball_axes) x(a) *= domain.ball_radius / r;
    }
    grid.points.push_back(x);
    int a = d - 1;
    while (a >= 0 && ++idx[static_cast<std::size_t>(a)] == axes[static_cast<std::size_t>(a)].size()) {
      idx[static_cast<std::size_t>(a)] = 0;
      --a;
    }
    if (a < 0) break;
  }
  return grid;
}

void parallel_chunks(std::size_t count, int jobs, const std::function<void(std::size_t, std::size_t)>& body) {
  const auto workers = static_cast<std::size_t>(std::clamp(jobs, 1, 64));
  if (workers == 1 || count < 2 * workers) {
    body(0, count);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    threads.emplace_back([&, w, begin, end] {
      try {
        if (begin < end) body(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace symgrowth
