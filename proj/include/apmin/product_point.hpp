#pragma once

#include <Eigen/Core>
#include <utility>

#include "apmin/errors.hpp"

namespace apmin {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// State of the two-block scheme: a pair (x, y) of finite real vectors.
/// Dimensions are fixed by the problem instance; components must be finite.
struct ProductPoint {
  Vec x;
  Vec y;

  ProductPoint() = default;  // empty; dimensions are checked at use sites

  ProductPoint(Vec x_in, Vec y_in) : x(std::move(x_in)), y(std::move(y_in)) {
    if (!x.allFinite() || !y.allFinite()) {
      throw ConfigError("ProductPoint components must be finite");
    }
  }

  Eigen::Index n() const { return x.size(); }
  Eigen::Index m() const { return y.size(); }

  double squared_distance_to(const ProductPoint& o) const {
    return (x - o.x).squaredNorm() + (y - o.y).squaredNorm();
  }
  double distance_to(const ProductPoint& o) const {
    return std::sqrt(squared_distance_to(o));
  }

  bool value_equal(const ProductPoint& o) const {
    return x.size() == o.x.size() && y.size() == o.y.size() &&
           (x.array() == o.x.array()).all() &&
           (y.array() == o.y.array()).all();
  }
};

}  // namespace apmin
