#pragma once

#include <string>

#include "gridcore.hpp"

namespace conedn {

// Tensor grid on [-L, L) x (0, 1]: collocation in sigma, cells in y.
// Cell centers y_j = (j + 1/2)/n_y for j = 0..n_y-1; faces at j/n_y.
class StripGrid {
 public:
  StripGrid(const SigmaGrid& sigma, int n_y);

  const SigmaGrid& sigma() const { return sigma_; }
  int n_y() const { return n_y_; }
  double dy() const { return 1.0 / n_y_; }
  double center(int j) const { return (j + 0.5) / n_y_; }
  double face(int f) const { return static_cast<double>(f) / n_y_; }
  RealVec centers() const;

 private:
  SigmaGrid sigma_;
  int n_y_;
};

// Samples v(sigma_i, y_j), row-major with sigma as the slow index.
class StripField {
 public:
  StripField(const SigmaGrid& sigma, RealVec y, RealVec values);
  static StripField zeros(const StripGrid& grid);

  const SigmaGrid& sigma() const { return sigma_; }
  const RealVec& y() const { return y_; }
  const RealVec& values() const { return values_; }
  RealVec& values() { return values_; }
  int n_sigma() const { return sigma_.size(); }
  int n_y() const { return static_cast<int>(y_.size()); }

  double at(int i, int j) const { return values_[static_cast<size_t>(i) * y_.size() + j]; }
  double& at(int i, int j) { return values_[static_cast<size_t>(i) * y_.size() + j]; }
  RealVec column(int j) const;  // fixed y_j, all sigma
  void set_column(int j, const RealVec& c);

  void write_csv(const std::string& path) const;
  // 16-byte header: "CDN1", uint32 n_sigma, uint32 n_y, uint32 reserved; then doubles.
  void write_binary(const std::string& path) const;
  static StripField read_binary(const std::string& path, double half_length, const RealVec& y);

 private:
  SigmaGrid sigma_;
  RealVec y_;
  RealVec values_;
};

std::string format_double(double v);

}  // namespace conedn
