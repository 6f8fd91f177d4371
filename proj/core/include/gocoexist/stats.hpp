#pragma once

#include <cstddef>
#include <span>

namespace gocoexist {

double mean_of(std::span<const double> x);

/// Standard error of the mean from `batches` contiguous batch means. Batch k
/// covers [k n / B, (k + 1) n / B). Returns 0 when fewer than two batches fit.
double batch_means_se(std::span<const double> x, std::size_t batches = 50);

/// Batch-means standard error of mean(a) - mean(b) for equal-length series
/// observed on common random numbers.
double paired_se(std::span<const double> a, std::span<const double> b, std::size_t batches = 50);

}  // namespace gocoexist
