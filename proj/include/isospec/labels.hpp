#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace isospec {

// Basis-label conventions.  Every scheme is a bijection between flat basis
// indices [0, dim) and human-readable label strings:
//   Bits        "0110"        qubit registers, site 0 leftmost / most significant
//   Trits       "l0r"         spin-1 registers with characters l, 0, r
//   ClockedBits "t:bits"      clock register times a qubit register, e.g. "3:010"
//   Offset      "-4"          a single register with integer labels -n..n
enum class LabelKind { Bits, Trits, ClockedBits, Offset };

class LabelScheme {
 public:
  static LabelScheme bits(int n_sites);
  static LabelScheme trits(int n_sites);
  // n qubit sites followed by one clock register of dimension n_times.
  static LabelScheme clocked_bits(int n_qubits, int n_times);
  // Single register of dimension 2*half_width+1 labeled -half_width..half_width.
  static LabelScheme offset_ring(int half_width);

  LabelKind kind() const { return kind_; }
  const std::vector<int>& site_dims() const { return site_dims_; }
  std::size_t num_sites() const { return site_dims_.size(); }
  std::size_t dim() const { return dim_; }

  // Mixed-radix digit of `site` in basis index `idx` (site 0 most significant
  // for Bits/Trits; the clock register is the last, fastest-varying site).
  int digit(std::size_t idx, std::size_t site) const;
  std::size_t stride(std::size_t site) const { return strides_[site]; }

  std::string label_of(std::size_t idx) const;
  std::size_t index_of(const std::string& label) const;  // throws spec_error

  // Clock value for ClockedBits schemes.
  int clock_of(std::size_t idx) const;

  bool operator==(const LabelScheme&) const = default;

 private:
  LabelScheme(LabelKind kind, std::vector<int> site_dims, int offset);

  LabelKind kind_;
  std::vector<int> site_dims_;
  std::vector<std::size_t> strides_;
  std::size_t dim_;
  int offset_ = 0;  // Offset scheme: label = index - offset_
};

}  // namespace isospec
