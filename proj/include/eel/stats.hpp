#pragma once

#include <span>

namespace eel {

struct Summary {
  double mean = 0.0;
  /// Sample standard deviation (n - 1 denominator); 0 for fewer than 2 values.
  double stddev = 0.0;

  friend bool operator==(const Summary&, const Summary&) = default;
};

Summary summarize(std::span<const double> values);

/// Two-sided paired t-test p-value for H0: mean(a - b) = 0. A zero-variance
/// difference gives 1 when its mean is 0 and 0 otherwise. Throws
/// std::invalid_argument on a length mismatch or fewer than 2 pairs.
double paired_ttest(std::span<const double> a, std::span<const double> b);

/// Two-sided tail probability P(|T| >= |t|) for Student's t with `dof` degrees
/// of freedom.
double student_t_two_sided(double t, double dof);

}  // namespace eel
