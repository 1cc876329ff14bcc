#include "qpic/quadrature.hpp"

#include <boost/math/special_functions/legendre.hpp>

namespace qpic {

GaussLegendre::GaussLegendre(int nodes) {
  if (nodes < 2) {
    throw std::invalid_argument("GaussLegendre: need at least 2 nodes");
  }
  // boost returns the non-negative zeros in ascending order
  const std::vector<double> zeros = boost::math::legendre_p_zeros<double>(nodes);
  for (double x : zeros) {
    const double dp = boost::math::legendre_p_prime(nodes, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    if (x == 0.0) {
      nodes_.push_back(0.0);
      weights_.push_back(w);
    } else {
      nodes_.push_back(x);
      weights_.push_back(w);
      nodes_.push_back(-x);
      weights_.push_back(w);
    }
  }
}

}  // namespace qpic
