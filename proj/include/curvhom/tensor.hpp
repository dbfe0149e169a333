#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace curvhom {

inline constexpr int kFrameDim = 3;
inline constexpr double kDeterminantFloor = 1e-12;

/// Dense tensor on a 3-dimensional frame.
///
/// Slots are numbered with the contravariant slots first, then the covariant
/// ones; components are stored row-major over that slot order. For curvature
/// tensors the slot order is R(e_i, e_j, e_k, e_l), and the k-th covariant
/// derivative appends its differentiation slots last.
class TensorAtPoint {
 public:
  TensorAtPoint() : TensorAtPoint(0, 0) {}
  TensorAtPoint(int contravariant_rank, int covariant_rank);
  TensorAtPoint(int contravariant_rank, int covariant_rank, std::vector<double> components);

  static TensorAtPoint scalar(double v);
  /// The (1,1) identity map.
  static TensorAtPoint identity();
  static TensorAtPoint from_matrix(const Eigen::Matrix3d& m);

  int contravariant_rank() const noexcept { return contravariant_; }
  int covariant_rank() const noexcept { return covariant_; }
  int rank() const noexcept { return contravariant_ + covariant_; }
  std::size_t size() const noexcept { return data_.size(); }

  double operator()(std::initializer_list<int> idx) const { return data_[offset(idx)]; }
  double& operator()(std::initializer_list<int> idx) { return data_[offset(idx)]; }
  double at(std::span<const int> idx) const { return data_[offset(idx)]; }
  double& at(std::span<const int> idx) { return data_[offset(idx)]; }

  std::span<const double> components() const noexcept { return data_; }
  std::span<double> components() noexcept { return data_; }

  /// Rank-2 tensors only.
  Eigen::Matrix3d matrix() const;
  double max_abs() const noexcept;

  friend TensorAtPoint operator-(const TensorAtPoint& a, const TensorAtPoint& b);
  friend TensorAtPoint operator*(double s, TensorAtPoint t);

 private:
  std::size_t offset(std::span<const int> idx) const;
  std::size_t offset(std::initializer_list<int> idx) const {
    return offset(std::span<const int>(idx.begin(), idx.size()));
  }

  int contravariant_;
  int covariant_;
  std::vector<double> data_;
};

/// Change of basis: column a holds the new basis vector e'_a in old components.
class Frame {
 public:
  explicit Frame(const Eigen::Matrix3d& columns);
  static Frame identity() { return Frame(Eigen::Matrix3d::Identity()); }
  static Frame diagonal(double a, double b, double c);

  const Eigen::Matrix3d& matrix() const noexcept { return m_; }
  Frame inverse() const { return Frame(m_.inverse()); }
  /// Frame whose vectors are `rhs` expressed through `*this`.
  Frame operator*(const Frame& rhs) const { return Frame(m_ * rhs.m_); }

 private:
  Eigen::Matrix3d m_;
};

/// Components of `t` on the basis given by `frame`. Covariant slots precompose
/// with the frame; contravariant slots transform by its inverse.
TensorAtPoint pullback(const TensorAtPoint& t, const Frame& frame);

/// Throws GeometryError unless g is a symmetric (0,2) tensor with |det| >= floor.
void require_metric(const TensorAtPoint& g);

/// (0,k) -> (1,k-1): contracts the last covariant slot with the inverse metric.
TensorAtPoint raise_last_index(const TensorAtPoint& t, const TensorAtPoint& g);

/// (1,k-1) -> (0,k): lowers the contravariant slot into a trailing covariant slot.
TensorAtPoint lower_last_index(const TensorAtPoint& t, const TensorAtPoint& g);

/// Trace over two distinct slots. Mixed slot pairs need no metric.
TensorAtPoint contract(const TensorAtPoint& t, int slot_a, int slot_b);
/// Trace over two slots of equal variance, using g (covariant pair uses g^{-1}).
TensorAtPoint contract(const TensorAtPoint& t, int slot_a, int slot_b, const TensorAtPoint& g);

struct Signature {
  int positive = 0;
  int negative = 0;
};

Signature metric_signature(const TensorAtPoint& g);

}  // namespace curvhom
