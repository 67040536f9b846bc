#pragma once

#include <Eigen/Dense>

namespace causal {

// Ambient dimensions stay small (n+1 <= 6), so vectors and matrices use
// fixed-capacity storage and never touch the heap.
inline constexpr int kMaxDim = 6;

using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor,
                          kMaxDim, kMaxDim>;

inline Vec make_vec(std::initializer_list<double> values) {
  Vec v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

}  // namespace causal
