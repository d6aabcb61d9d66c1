#include "strip_field.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "errors.hpp"

namespace conedn {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

StripGrid::StripGrid(const SigmaGrid& sigma, int n_y) : sigma_(sigma), n_y_(n_y) {
  if (n_y < 16) throw ConfigError("grid.n_y must be >= 16, got " + std::to_string(n_y));
}

RealVec StripGrid::centers() const {
  RealVec y(n_y_);
  for (int j = 0; j < n_y_; ++j) y[j] = center(j);
  return y;
}

StripField::StripField(const SigmaGrid& sigma, RealVec y, RealVec values)
    : sigma_(sigma), y_(std::move(y)), values_(std::move(values)) {
  if (values_.size() != static_cast<size_t>(sigma_.size()) * y_.size())
    throw ConfigError("strip field size mismatch");
}

StripField StripField::zeros(const StripGrid& grid) {
  return StripField(grid.sigma(), grid.centers(),
                    RealVec(static_cast<size_t>(grid.sigma().size()) * grid.n_y(), 0.0));
}

RealVec StripField::column(int j) const {
  RealVec c(n_sigma());
  for (int i = 0; i < n_sigma(); ++i) c[i] = at(i, j);
  return c;
}

void StripField::set_column(int j, const RealVec& c) {
  for (int i = 0; i < n_sigma(); ++i) at(i, j) = c[i];
}

void StripField::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path);
  out << "sigma,y,v\n";
  for (int i = 0; i < n_sigma(); ++i)
    for (int j = 0; j < n_y(); ++j)
      out << format_double(sigma_.node(i)) << ',' << format_double(y_[j]) << ','
          << format_double(at(i, j)) << '\n';
}

void StripField::write_binary(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path);
  const char magic[4] = {'C', 'D', 'N', '1'};
  const uint32_t header[3] = {static_cast<uint32_t>(n_sigma()), static_cast<uint32_t>(n_y()), 0u};
  out.write(magic, 4);
  out.write(reinterpret_cast<const char*>(header), sizeof header);
  out.write(reinterpret_cast<const char*>(values_.data()),
            static_cast<std::streamsize>(values_.size() * sizeof(double)));
}

StripField StripField::read_binary(const std::string& path, double half_length, const RealVec& y) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  char magic[4];
  uint32_t header[3];
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(header), sizeof header);
  if (!in || std::memcmp(magic, "CDN1", 4) != 0) throw IoError("bad strip field header in " + path);
  if (header[1] != y.size()) throw IoError("n_y in " + path + " does not match");
  const SigmaGrid sigma(half_length, static_cast<int>(header[0]));
  RealVec values(static_cast<size_t>(header[0]) * header[1]);
  in.read(reinterpret_cast<char*>(values.data()),
          static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!in) throw IoError("truncated strip field " + path);
  return StripField(sigma, y, std::move(values));
}

}  // namespace conedn
