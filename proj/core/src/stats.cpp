#include "gocoexist/stats.hpp"

#include <cmath>
#include <vector>

#include "gocoexist/errors.hpp"

namespace gocoexist {

double mean_of(std::span<const double> x) {
  if (x.empty()) throw DomainError("mean_of: empty series");
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double batch_means_se(std::span<const double> x, std::size_t batches) {
  const std::size_t n = x.size();
  if (batches < 2 || n < batches) return 0.0;
  std::vector<double> means(batches);
  for (std::size_t k = 0; k < batches; ++k) {
    const std::size_t lo = k * n / batches;
    const std::size_t hi = (k + 1) * n / batches;
    means[k] = mean_of(x.subspan(lo, hi - lo));
  }
  const double m = mean_of(means);
  double ss = 0.0;
  for (double v : means) ss += (v - m) * (v - m);
  const double var = ss / static_cast<double>(batches - 1);
  return std::sqrt(var / static_cast<double>(batches));
}

double paired_se(std::span<const double> a, std::span<const double> b, std::size_t batches) {
  if (a.size() != b.size()) throw DomainError("paired_se: series lengths differ");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return batch_means_se(d, batches);
}

}  // namespace gocoexist
