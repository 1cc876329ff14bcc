#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace qpic {

/// Gauss-Legendre rule on [-1, 1] with a runtime node count.
class GaussLegendre {
 public:
  /// Throws std::invalid_argument for fewer than 2 nodes.
  explicit GaussLegendre(int nodes);

  int size() const { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

  /// Composite rule: [lo, hi] split into `panels` equal panels.
  template <class F>
  auto integrate(F&& f, double lo, double hi, int panels = 1) const -> decltype(f(0.0)) {
    using R = decltype(f(0.0));
    R total{};
    const double width = (hi - lo) / panels;
    for (int k = 0; k < panels; ++k) {
      const double a = lo + k * width;
      const double half = 0.5 * width;
      const double mid = a + half;
      R part{};
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        part += weights_[i] * f(mid + half * nodes_[i]);
      }
      total += half * part;
    }
    return total;
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

}  // namespace qpic
