#include "isospec/labels.hpp"

#include <charconv>

#include "isospec/errors.hpp"

namespace isospec {

namespace {

constexpr char kTritChars[3] = {'l', '0', 'r'};

int trit_value(char c) {
  for (int v = 0; v < 3; ++v)
    if (kTritChars[v] == c) return v;
  throw spec_error(std::string("invalid trit character '") + c + "'");
}

}  // namespace

LabelScheme::LabelScheme(LabelKind kind, std::vector<int> site_dims, int offset)
    : kind_(kind), site_dims_(std::move(site_dims)), offset_(offset) {
  if (site_dims_.empty()) throw spec_error("label scheme needs at least one site");
  strides_.assign(site_dims_.size(), 1);
  dim_ = 1;
  for (std::size_t i = site_dims_.size(); i-- > 0;) {
    if (site_dims_[i] < 2) throw spec_error("site dimension must be >= 2");
    strides_[i] = dim_;
    dim_ *= static_cast<std::size_t>(site_dims_[i]);
  }
  if (dim_ < 2) throw spec_error("total dimension must be >= 2");
}

LabelScheme LabelScheme::bits(int n_sites) {
  return LabelScheme(LabelKind::Bits, std::vector<int>(n_sites, 2), 0);
}

LabelScheme LabelScheme::trits(int n_sites) {
  return LabelScheme(LabelKind::Trits, std::vector<int>(n_sites, 3), 0);
}

LabelScheme LabelScheme::clocked_bits(int n_qubits, int n_times) {
  std::vector<int> dims(n_qubits, 2);
  dims.push_back(n_times);
  return LabelScheme(LabelKind::ClockedBits, std::move(dims), 0);
}

LabelScheme LabelScheme::offset_ring(int half_width) {
  return LabelScheme(LabelKind::Offset, {2 * half_width + 1}, half_width);
}

int LabelScheme::digit(std::size_t idx, std::size_t site) const {
  return static_cast<int>(idx / strides_[site] % static_cast<std::size_t>(site_dims_[site]));
}

int LabelScheme::clock_of(std::size_t idx) const {
  if (kind_ != LabelKind::ClockedBits) throw spec_error("clock_of: not a clocked-bits scheme");
  return digit(idx, site_dims_.size() - 1);
}

std::string LabelScheme::label_of(std::size_t idx) const {
  if (idx >= dim_) throw spec_error("label_of: index out of range");
  switch (kind_) {
    case LabelKind::Bits: {
      std::string s(site_dims_.size(), '0');
      for (std::size_t i = 0; i < site_dims_.size(); ++i) s[i] = char('0' + digit(idx, i));
      return s;
    }
    case LabelKind::Trits: {
      std::string s(site_dims_.size(), '0');
      for (std::size_t i = 0; i < site_dims_.size(); ++i) s[i] = kTritChars[digit(idx, i)];
      return s;
    }
    case LabelKind::ClockedBits: {
      std::string s = std::to_string(clock_of(idx));
      s += ':';
      for (std::size_t i = 0; i + 1 < site_dims_.size(); ++i) s += char('0' + digit(idx, i));
      return s;
    }
    case LabelKind::Offset:
      return std::to_string(static_cast<long>(idx) - offset_);
  }
  throw spec_error("label_of: unknown scheme");
}

std::size_t LabelScheme::index_of(const std::string& label) const {
  switch (kind_) {
    case LabelKind::Bits: {
      if (label.size() != site_dims_.size()) throw spec_error("bad bit-string length: " + label);
      std::size_t idx = 0;
      for (std::size_t i = 0; i < label.size(); ++i) {
        if (label[i] != '0' && label[i] != '1') throw spec_error("invalid bit in label: " + label);
        idx += static_cast<std::size_t>(label[i] - '0') * strides_[i];
      }
      return idx;
    }
    case LabelKind::Trits: {
      if (label.size() != site_dims_.size()) throw spec_error("bad trit-string length: " + label);
      std::size_t idx = 0;
      for (std::size_t i = 0; i < label.size(); ++i)
        idx += static_cast<std::size_t>(trit_value(label[i])) * strides_[i];
      return idx;
    }
    case LabelKind::ClockedBits: {
      auto colon = label.find(':');
      if (colon == std::string::npos) throw spec_error("clocked label needs 't:bits': " + label);
      int t = 0;
      auto [p, ec] = std::from_chars(label.data(), label.data() + colon, t);
      if (ec != std::errc{} || p != label.data() + colon)
        throw spec_error("bad clock value in label: " + label);
      const int n_times = site_dims_.back();
      if (t < 0 || t >= n_times) throw spec_error("clock value out of range: " + label);
      const std::string bits = label.substr(colon + 1);
      if (bits.size() != site_dims_.size() - 1) throw spec_error("bad bit-string length: " + label);
      std::size_t idx = static_cast<std::size_t>(t);
      for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] != '0' && bits[i] != '1') throw spec_error("invalid bit in label: " + label);
        idx += static_cast<std::size_t>(bits[i] - '0') * strides_[i];
      }
      return idx;
    }
    case LabelKind::Offset: {
      long v = 0;
      auto [p, ec] = std::from_chars(label.data(), label.data() + label.size(), v);
      if (ec != std::errc{} || p != label.data() + label.size())
        throw spec_error("bad integer label: " + label);
      const long idx = v + offset_;
      if (idx < 0 || idx >= static_cast<long>(dim_)) throw spec_error("label out of range: " + label);
      return static_cast<std::size_t>(idx);
    }
  }
  throw spec_error("index_of: unknown scheme");
}

}  // namespace isospec
