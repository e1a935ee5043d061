#include "ssrt/sinogram_io.hpp"

#include <bit>
#include <charconv>
#include <cstring>

#include "ssrt/error.hpp"

namespace ssrt {
namespace {

void append_number(std::string& out, double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, end);
}

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T v) {
  std::uint64_t bits;
  if constexpr (std::is_same_v<T, double>) {
    bits = std::bit_cast<std::uint64_t>(v);
  } else {
    bits = v;
  }
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

class LeReader {
 public:
  explicit LeReader(const std::vector<std::uint8_t>& b) : b_(b) {}
  std::uint64_t raw(std::size_t n) {
    if (pos_ + n > b_.size()) throw IoError("truncated SSRT1 data");
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(b_[pos_ + i]) << (8 * i);
    pos_ += n;
    return v;
  }
  std::uint32_t u32() { return static_cast<std::uint32_t>(raw(4)); }
  double f64() { return std::bit_cast<double>(raw(8)); }
  void skip(std::size_t n) { pos_ += n; }
  bool at_end() const { return pos_ == b_.size(); }

 private:
  const std::vector<std::uint8_t>& b_;
  std::size_t pos_ = 0;
};

constexpr char kMagic[5] = {'S', 'S', 'R', 'T', '1'};

}  // namespace

std::string sinogram_to_csv(const Sinogram& sino) {
  const auto& g = sino.grid();
  std::string out = "theta_deg";
  for (double t : g.theta_values) {
    out += ',';
    append_number(out, rad_to_deg(t));
  }
  out += "\nrho";
  for (double r : g.rho_values) {
    out += ',';
    append_number(out, r);
  }
  out += '\n';
  for (std::size_t r = 0; r < sino.n_rho(); ++r) {
    for (std::size_t t = 0; t < sino.n_theta(); ++t) {
      if (t) out += ',';
      append_number(out, sino.at(r, t));
    }
    out += '\n';
  }
  return out;
}

std::vector<std::uint8_t> sinogram_to_binary(const Sinogram& sino) {
  std::vector<std::uint8_t> out(kMagic, kMagic + 5);
  put_le(out, static_cast<std::uint32_t>(sino.n_rho()));
  put_le(out, static_cast<std::uint32_t>(sino.n_theta()));
  put_le(out, static_cast<std::uint32_t>(sino.kind() == SinogramKind::ssrt ? 1 : 0));
  put_le(out, sino.grid().rho_step);
  put_le(out, sino.grid().theta_step);
  put_le(out, sino.sigma().value_or(0.0));
  for (std::size_t r = 0; r < sino.n_rho(); ++r)
    for (std::size_t t = 0; t < sino.n_theta(); ++t) put_le(out, sino.at(r, t));
  return out;
}

Sinogram sinogram_from_binary(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 5 || std::memcmp(bytes.data(), kMagic, 5) != 0) throw IoError("missing SSRT1 magic");
  LeReader rd(bytes);
  rd.skip(5);
  const std::uint32_t n_rho = rd.u32();
  const std::uint32_t n_theta = rd.u32();
  const std::uint32_t kind = rd.u32();
  const double rho_step = rd.f64();
  const double theta_step = rd.f64();
  const double sigma = rd.f64();
  if (n_rho == 0 || n_rho % 2 == 0 || n_theta == 0 || kind > 1 || !(rho_step > 0.0) || !(theta_step > 0.0))
    throw IoError("invalid SSRT1 header");

  SinogramGrid g;
  g.rho_step = rho_step;
  g.theta_step = theta_step;
  const std::int64_t half = (n_rho - 1) / 2;
  for (std::int64_t k = 0; k < n_rho; ++k) g.rho_values.push_back(static_cast<double>(k - half) * rho_step);
  for (std::uint32_t t = 0; t < n_theta; ++t) g.theta_values.push_back(static_cast<double>(t) * theta_step);

  Sinogram s = kind == 1 ? Sinogram(std::move(g), SinogramKind::ssrt, sigma)
                         : Sinogram(std::move(g), SinogramKind::radon);
  for (std::size_t r = 0; r < n_rho; ++r)
    for (std::size_t t = 0; t < n_theta; ++t) s.at(r, t) = rd.f64();
  if (!rd.at_end()) throw IoError("trailing bytes after SSRT1 data");
  return s;
}

}  // namespace ssrt
