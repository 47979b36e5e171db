#include "smmi/constellation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smmi {

ConstellationKind parse_constellation(const std::string& name) {
  if (name == "bpsk") return ConstellationKind::BPSK;
  if (name == "qpsk") return ConstellationKind::QPSK;
  if (name == "8psk") return ConstellationKind::PSK8;
  if (name == "16qam") return ConstellationKind::QAM16;
  throw std::invalid_argument("unknown constellation: " + name);
}

std::string to_string(ConstellationKind kind) {
  switch (kind) {
    case ConstellationKind::BPSK: return "bpsk";
    case ConstellationKind::QPSK: return "qpsk";
    case ConstellationKind::PSK8: return "8psk";
    case ConstellationKind::QAM16: return "16qam";
  }
  throw std::invalid_argument("unknown constellation kind");
}

double Constellation::bits_per_symbol() const {
  return std::log2(static_cast<double>(symbols.size()));
}

double Constellation::max_mi(int nt) const {
  return std::log2(static_cast<double>(nt) * static_cast<double>(symbols.size()));
}

namespace {

std::vector<std::complex<double>> psk(int m) {
  std::vector<std::complex<double>> s(m);
  for (int k = 0; k < m; ++k) {
    const double a = 2.0 * std::numbers::pi * k / m;
    s[k] = {std::cos(a), std::sin(a)};
  }
  s[0] = {1.0, 0.0};
  if (m >= 4) s[m / 4] = {0.0, 1.0};          // exact axis points for QPSK/8PSK
  if (m >= 2) s[m / 2] = {-1.0, 0.0};
  if (m >= 4) s[3 * m / 4] = {0.0, -1.0};
  return s;
}

std::vector<std::complex<double>> qam16() {
  // E|s|^2 over the {+-1, +-3} grid is 10, hence the 1/sqrt(10) scale.
  const double scale = 1.0 / std::sqrt(10.0);
  std::vector<std::complex<double>> s;
  s.reserve(16);
  for (int re = -3; re <= 3; re += 2)
    for (int im = -3; im <= 3; im += 2)
      s.emplace_back(re * scale, im * scale);
  return s;
}

}  // namespace

Constellation make_constellation(ConstellationKind kind) {
  switch (kind) {
    case ConstellationKind::BPSK: return {kind, {{1.0, 0.0}, {-1.0, 0.0}}};
    case ConstellationKind::QPSK: return {kind, psk(4)};
    case ConstellationKind::PSK8: return {kind, psk(8)};
    case ConstellationKind::QAM16: return {kind, qam16()};
  }
  throw std::invalid_argument("unknown constellation kind");
}

Constellation make_constellation(const std::string& name) {
  return make_constellation(parse_constellation(name));
}

}  // namespace smmi
