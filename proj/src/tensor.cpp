#include "curvhom/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "curvhom/errors.hpp"

namespace curvhom {
namespace {

std::size_t power_of_three(int n) {
  std::size_t r = 1;
  for (int i = 0; i < n; ++i) r *= 3;
  return r;
}

// out[.., a, ..] = sum_i m(a, i) * in[.., i, ..] along one slot.
void transform_slot(std::vector<double>& data, int rank, int slot, const Eigen::Matrix3d& m) {
  const std::size_t stride = power_of_three(rank - 1 - slot);
  const std::size_t block = stride * 3;
  for (std::size_t base = 0; base < data.size(); base += block) {
    for (std::size_t inner = 0; inner < stride; ++inner) {
      const std::size_t o = base + inner;
      const double v0 = data[o];
      const double v1 = data[o + stride];
      const double v2 = data[o + 2 * stride];
      for (int a = 0; a < 3; ++a) {
        data[o + static_cast<std::size_t>(a) * stride] = m(a, 0) * v0 + m(a, 1) * v1 + m(a, 2) * v2;
      }
    }
  }
}

Eigen::Matrix3d checked_inverse(const Eigen::Matrix3d& m, const char* what) {
  const double det = m.determinant();
  if (!(std::abs(det) >= kDeterminantFloor)) {
    throw GeometryError(std::string(what) + " is singular (|det| = " + std::to_string(std::abs(det)) +
                        ")");
  }
  return m.inverse();
}

}  // namespace

TensorAtPoint::TensorAtPoint(int contravariant_rank, int covariant_rank)
    : contravariant_(contravariant_rank),
      covariant_(covariant_rank),
      data_(power_of_three(contravariant_rank + covariant_rank), 0.0) {
  if (contravariant_rank < 0 || covariant_rank < 0) throw std::invalid_argument("negative tensor rank");
}

TensorAtPoint::TensorAtPoint(int contravariant_rank, int covariant_rank, std::vector<double> components)
    : TensorAtPoint(contravariant_rank, covariant_rank) {
  if (components.size() != data_.size()) {
    throw std::invalid_argument("component count " + std::to_string(components.size()) +
                                " does not match 3^" + std::to_string(rank()));
  }
  data_ = std::move(components);
}

TensorAtPoint TensorAtPoint::scalar(double v) { return TensorAtPoint(0, 0, {v}); }

TensorAtPoint TensorAtPoint::identity() {
  TensorAtPoint t(1, 1);
  for (int i = 0; i < 3; ++i) t({i, i}) = 1.0;
  return t;
}

TensorAtPoint TensorAtPoint::from_matrix(const Eigen::Matrix3d& m) {
  TensorAtPoint t(0, 2);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t({i, j}) = m(i, j);
  }
  return t;
}

Eigen::Matrix3d TensorAtPoint::matrix() const {
  if (rank() != 2) throw GeometryError("matrix view requires a rank-2 tensor");
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m(i, j) = data_[static_cast<std::size_t>(3 * i + j)];
  }
  return m;
}

double TensorAtPoint::max_abs() const noexcept {
  double r = 0.0;
  for (double v : data_) r = std::max(r, std::abs(v));
  return r;
}

std::size_t TensorAtPoint::offset(std::span<const int> idx) const {
  if (static_cast<int>(idx.size()) != rank()) {
    throw std::out_of_range("expected " + std::to_string(rank()) + " indices, got " +
                            std::to_string(idx.size()));
  }
  std::size_t off = 0;
  for (int i : idx) {
    if (i < 0 || i >= kFrameDim) throw std::out_of_range("tensor index out of range");
    off = off * 3 + static_cast<std::size_t>(i);
  }
  return off;
}

TensorAtPoint operator-(const TensorAtPoint& a, const TensorAtPoint& b) {
  if (a.contravariant_ != b.contravariant_ || a.covariant_ != b.covariant_) {
    throw GeometryError("tensor valence mismatch");
  }
  TensorAtPoint out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

TensorAtPoint operator*(double s, TensorAtPoint t) {
  for (double& v : t.data_) v *= s;
  return t;
}

Frame::Frame(const Eigen::Matrix3d& columns) : m_(columns) {
  const double det = m_.determinant();
  if (!(std::abs(det) >= kDeterminantFloor)) throw GeometryError("frame is singular");
}

Frame Frame::diagonal(double a, double b, double c) {
  return Frame(Eigen::Vector3d(a, b, c).asDiagonal());
}

TensorAtPoint pullback(const TensorAtPoint& t, const Frame& frame) {
  const Eigen::Matrix3d covariant_map = frame.matrix().transpose();
  const Eigen::Matrix3d contravariant_map = checked_inverse(frame.matrix(), "frame");
  std::vector<double> data(t.components().begin(), t.components().end());
  for (int s = 0; s < t.rank(); ++s) {
    transform_slot(data, t.rank(), s, s < t.contravariant_rank() ? contravariant_map : covariant_map);
  }
  return TensorAtPoint(t.contravariant_rank(), t.covariant_rank(), std::move(data));
}

void require_metric(const TensorAtPoint& g) {
  if (g.contravariant_rank() != 0 || g.covariant_rank() != 2) {
    throw GeometryError("metric must be a (0,2) tensor");
  }
  const Eigen::Matrix3d m = g.matrix();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw GeometryError("metric is not symmetric");
  }
  if (!(std::abs(m.determinant()) >= kDeterminantFloor)) throw GeometryError("metric is degenerate");
}

TensorAtPoint raise_last_index(const TensorAtPoint& t, const TensorAtPoint& g) {
  if (t.contravariant_rank() != 0 || t.covariant_rank() < 1) {
    throw GeometryError("raise_last_index expects a (0,k) tensor with k >= 1");
  }
  require_metric(g);
  const Eigen::Matrix3d ginv = g.matrix().inverse();
  const int k = t.covariant_rank();
  const std::size_t head = power_of_three(k - 1);
  TensorAtPoint out(1, k - 1);
  auto src = t.components();
  auto dst = out.components();
  for (int m = 0; m < 3; ++m) {
    for (std::size_t h = 0; h < head; ++h) {
      double acc = 0.0;
      for (int l = 0; l < 3; ++l) acc += ginv(m, l) * src[h * 3 + static_cast<std::size_t>(l)];
      dst[static_cast<std::size_t>(m) * head + h] = acc;
    }
  }
  return out;
}

TensorAtPoint lower_last_index(const TensorAtPoint& t, const TensorAtPoint& g) {
  if (t.contravariant_rank() != 1) throw GeometryError("lower_last_index expects a (1,k) tensor");
  require_metric(g);
  const Eigen::Matrix3d gm = g.matrix();
  const int k = t.covariant_rank();
  const std::size_t head = power_of_three(k);
  TensorAtPoint out(0, k + 1);
  auto src = t.components();
  auto dst = out.components();
  for (std::size_t h = 0; h < head; ++h) {
    for (int l = 0; l < 3; ++l) {
      double acc = 0.0;
      for (int m = 0; m < 3; ++m) acc += gm(m, l) * src[static_cast<std::size_t>(m) * head + h];
      dst[h * 3 + static_cast<std::size_t>(l)] = acc;
    }
  }
  return out;
}

namespace {

TensorAtPoint contract_with(const TensorAtPoint& t, int a, int b, const Eigen::Matrix3d& w) {
  const int rank = t.rank();
  if (a == b || a < 0 || b < 0 || a >= rank || b >= rank) {
    throw std::out_of_range("contraction slots must be distinct and within the tensor rank");
  }
  if (a > b) std::swap(a, b);
  const int contra_removed = (a < t.contravariant_rank() ? 1 : 0) + (b < t.contravariant_rank() ? 1 : 0);
  TensorAtPoint out(t.contravariant_rank() - contra_removed,
                    t.covariant_rank() - (2 - contra_removed));
  std::vector<int> full(static_cast<std::size_t>(rank), 0);
  std::vector<int> rest(static_cast<std::size_t>(rank - 2), 0);
  for (std::size_t r = 0; r < out.size(); ++r) {
    std::size_t code = r;
    for (int s = rank - 3; s >= 0; --s) {
      rest[static_cast<std::size_t>(s)] = static_cast<int>(code % 3);
      code /= 3;
    }
    for (int s = 0, q = 0; s < rank; ++s) {
      if (s != a && s != b) full[static_cast<std::size_t>(s)] = rest[static_cast<std::size_t>(q++)];
    }
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (w(i, j) == 0.0) continue;
        full[static_cast<std::size_t>(a)] = i;
        full[static_cast<std::size_t>(b)] = j;
        acc += w(i, j) * t.at(full);
      }
    }
    out.components()[r] = acc;
  }
  return out;
}

}  // namespace

TensorAtPoint contract(const TensorAtPoint& t, int slot_a, int slot_b) {
  const bool a_contra = slot_a < t.contravariant_rank();
  const bool b_contra = slot_b < t.contravariant_rank();
  if (a_contra == b_contra && slot_a != slot_b) {
    throw GeometryError("contracting two slots of equal variance requires a metric");
  }
  return contract_with(t, slot_a, slot_b, Eigen::Matrix3d::Identity());
}

TensorAtPoint contract(const TensorAtPoint& t, int slot_a, int slot_b, const TensorAtPoint& g) {
  const bool a_contra = slot_a < t.contravariant_rank();
  const bool b_contra = slot_b < t.contravariant_rank();
  if (a_contra != b_contra) return contract(t, slot_a, slot_b);
  require_metric(g);
  const Eigen::Matrix3d w = a_contra ? g.matrix() : Eigen::Matrix3d(g.matrix().inverse());
  return contract_with(t, slot_a, slot_b, w);
}

Signature metric_signature(const TensorAtPoint& g) {
  require_metric(g);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(g.matrix());
  Signature s;
  for (int i = 0; i < 3; ++i) {
    if (solver.eigenvalues()(i) > 0.0) {
      ++s.positive;
    } else {
      ++s.negative;
    }
  }
  return s;
}

}  // namespace curvhom
