#pragma once

#include <Eigen/Dense>
#include <sstream>
#include <stdexcept>
#include <string>

namespace plg {

/// Frames in which (bi)vectors on a group or product are expressed.
enum class FrameTag {
  left_trivialized,
  right_trivialized,
  mixed_lg_rgamma,  // l_{g^{-1}} on the first factor, r_{gamma^{-1}} on the second
  chart,
};

inline std::string to_string(FrameTag f) {
  switch (f) {
    case FrameTag::left_trivialized: return "left_trivialized";
    case FrameTag::right_trivialized: return "right_trivialized";
    case FrameTag::mixed_lg_rgamma: return "mixed_lg_rgamma";
    case FrameTag::chart: return "chart";
  }
  return "?";
}

enum class VecKind { vector, covector };

struct FrameVector {
  FrameTag frame = FrameTag::left_trivialized;
  VecKind kind = VecKind::vector;
  Eigen::VectorXd coords;
};

/// Antisymmetric matrix of a bivector in a given frame.
struct BivectorMatrix {
  FrameTag frame = FrameTag::left_trivialized;
  Eigen::MatrixXd m;

  BivectorMatrix() = default;
  BivectorMatrix(FrameTag f, Eigen::MatrixXd mat, double tol = 1e-12)
      : frame(f), m(std::move(mat)) {
    double skew = (m + m.transpose()).lpNorm<Eigen::Infinity>();
    if (skew > tol) {
      std::ostringstream os;
      os << "BivectorMatrix: not antisymmetric, defect " << skew;
      throw std::invalid_argument(os.str());
    }
  }
};

}  // namespace plg
