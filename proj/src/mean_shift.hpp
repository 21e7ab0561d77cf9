#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace egonet {

struct MeanShiftResult {
  std::vector<double> modes;             // strictly descending
  std::vector<std::size_t> labels;       // labels[i] indexes modes, per input value
  std::vector<std::size_t> unconverged;  // inputs that hit max_iters
};

/// One-dimensional Mean Shift with a flat kernel.
///
/// Every value is moved to the mean of the inputs within `bandwidth`
/// (inclusive) of its current position until the step is below `tolerance`.
/// Converged positions are sorted and split wherever two neighbours are more
/// than bandwidth / 2 apart; each group is one mode, located at the mean of
/// its converged positions. Points that did not converge in `max_iters`
/// steps are reported and attached to the nearest mode.
///
/// The neighbourhood mean is computed from prefix sums over the sorted
/// inputs, so the result does not depend on input order.
MeanShiftResult mean_shift_1d(std::span<const double> values, double bandwidth,
                              double tolerance = 1e-8, int max_iters = 500);

/// Median of all pairwise absolute differences; 0 for fewer than two values.
double median_pairwise_distance(std::span<const double> values);

}  // namespace egonet
