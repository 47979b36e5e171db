#ifndef SMMI_CONSTELLATION_HPP
#define SMMI_CONSTELLATION_HPP

#include <complex>
#include <string>
#include <vector>

namespace smmi {

enum class ConstellationKind { BPSK, QPSK, PSK8, QAM16 };

ConstellationKind parse_constellation(const std::string& name);
std::string to_string(ConstellationKind kind);

// Unit-average-power symbol set. PSK symbols are equally spaced on the unit
// circle starting at angle 0; 16QAM is the {+-1, +-3}^2 grid scaled by
// 1/sqrt(10).
struct Constellation {
  ConstellationKind kind;
  std::vector<std::complex<double>> symbols;

  int size() const { return static_cast<int>(symbols.size()); }
  double bits_per_symbol() const;
  // log2(Nt * M): the saturation MI of an SM link using this constellation.
  double max_mi(int nt) const;
};

Constellation make_constellation(ConstellationKind kind);
Constellation make_constellation(const std::string& name);

}  // namespace smmi

#endif
