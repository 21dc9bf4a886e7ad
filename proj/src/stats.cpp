#include "eel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

namespace eel {

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) {
    return s;
  }
  double sum = 0.0;
  for (double v : values) {
    sum += v;
  }
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) {
      sq += (v - s.mean) * (v - s.mean);
    }
    s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return s;
}

double student_t_two_sided(double t, double dof) {
  const boost::math::students_t_distribution<double> dist(dof);
  return std::min(1.0, 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t))));
}

double paired_ttest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("paired_ttest: length mismatch");
  }
  if (a.size() < 2) {
    throw std::invalid_argument("paired_ttest: need at least two pairs");
  }
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    d[i] = a[i] - b[i];
  }
  const auto s = summarize(d);
  if (s.stddev == 0.0) {
    return s.mean == 0.0 ? 1.0 : 0.0;
  }
  const double m = static_cast<double>(d.size());
  const double t = s.mean * std::sqrt(m) / s.stddev;
  return student_t_two_sided(t, m - 1.0);
}

}  // namespace eel
