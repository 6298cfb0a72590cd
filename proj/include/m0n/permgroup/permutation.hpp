#ifndef M0N_PERMGROUP_PERMUTATION_HPP
#define M0N_PERMGROUP_PERMUTATION_HPP

#include <algorithm>
#include <array>
#include <cctype>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "m0n/errors.hpp"

namespace m0n {

/// A bijection of {1..n}. Points are 0-based internally; all text I/O is
/// 1-based cycle notation.
///
/// Multiplication is function composition: (a * b)(x) = a(b(x)).
class Permutation {
 public:
  static constexpr int kMaxDegree = 12;

  Permutation() = default;

  static Permutation identity(int degree) {
    check_degree(degree);
    Permutation p;
    p.degree_ = static_cast<std::uint8_t>(degree);
    for (int i = 0; i < degree; ++i) p.img_[i] = static_cast<std::uint8_t>(i);
    return p;
  }

  /// `images` are 1-based: images[i-1] is the image of point i.
  static Permutation from_images(std::span<const int> images) {
    const int n = static_cast<int>(images.size());
    check_degree(n);
    Permutation p;
    p.degree_ = static_cast<std::uint8_t>(n);
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < n; ++i) {
      const int v = images[i] - 1;
      if (v < 0 || v >= n || seen[v]) throw DomainError("images do not form a bijection");
      seen[v] = true;
      p.img_[i] = static_cast<std::uint8_t>(v);
    }
    return p;
  }

  static Permutation from_images(std::initializer_list<int> images) {
    std::vector<int> v(images);
    return from_images(std::span<const int>(v));
  }

  /// Product of cycles over {1..degree}. Cycles are applied left to right,
  /// so "(1,2)(2,3)" first swaps 1,2 and then 2,3. Whitespace is ignored and
  /// "()" (or the empty string) is the identity.
  static Permutation parse_cycles(std::string_view text, int degree);

  int degree() const { return degree_; }

  /// 0-based image.
  int operator()(int point) const { return img_[point]; }

  /// 1-based images.
  std::vector<int> images() const {
    std::vector<int> out(degree_);
    for (int i = 0; i < degree_; ++i) out[i] = img_[i] + 1;
    return out;
  }

  friend Permutation operator*(const Permutation& a, const Permutation& b) {
    if (a.degree_ != b.degree_) throw DomainError("degree mismatch in permutation product");
    Permutation p;
    p.degree_ = a.degree_;
    for (int i = 0; i < a.degree_; ++i) p.img_[i] = a.img_[b.img_[i]];
    return p;
  }

  Permutation inverse() const {
    Permutation p;
    p.degree_ = degree_;
    for (int i = 0; i < degree_; ++i) p.img_[img_[i]] = static_cast<std::uint8_t>(i);
    return p;
  }

  /// w * this * w^-1
  Permutation conjugated_by(const Permutation& w) const {
    Permutation p;
    p.degree_ = degree_;
    for (int i = 0; i < degree_; ++i) p.img_[w.img_[i]] = w.img_[img_[i]];
    return p;
  }

  Permutation pow(long long e) const {
    Permutation base = e < 0 ? inverse() : *this;
    unsigned long long k = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
    Permutation acc = identity(degree_);
    while (k) {
      if (k & 1U) acc = acc * base;
      base = base * base;
      k >>= 1U;
    }
    return acc;
  }

  bool is_identity() const {
    for (int i = 0; i < degree_; ++i)
      if (img_[i] != i) return false;
    return true;
  }

  /// Cycle lengths in decreasing order, fixed points included.
  std::vector<int> cycle_type() const {
    std::vector<int> lens;
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < degree_; ++i) {
      if (seen[i]) continue;
      int len = 0;
      for (int j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        ++len;
      }
      lens.push_back(len);
    }
    std::sort(lens.rbegin(), lens.rend());
    return lens;
  }

  long long order() const {
    long long o = 1;
    for (int len : cycle_type()) o = std::lcm(o, static_cast<long long>(len));
    return o;
  }

  bool is_even() const {
    int transpositions = 0;
    for (int len : cycle_type()) transpositions += len - 1;
    return transpositions % 2 == 0;
  }

  /// Disjoint-cycle notation with 1-based points, "()" for the identity.
  std::string to_cycles() const {
    std::string out;
    std::array<bool, kMaxDegree> seen{};
    for (int i = 0; i < degree_; ++i) {
      if (seen[i] || img_[i] == i) continue;
      out += '(';
      bool first = true;
      for (int j = i; !seen[j]; j = img_[j]) {
        seen[j] = true;
        if (!first) out += ',';
        out += std::to_string(j + 1);
        first = false;
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  /// Packs the images into 48 bits, 4 bits per point.
  std::uint64_t key() const {
    std::uint64_t k = 0;
    for (int i = 0; i < degree_; ++i) k |= static_cast<std::uint64_t>(img_[i]) << (4 * i);
    return k;
  }

  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.degree_ == b.degree_ && a.img_ == b.img_;
  }
  friend std::strong_ordering operator<=>(const Permutation& a, const Permutation& b) {
    if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
    for (int i = 0; i < a.degree_; ++i)
      if (auto c = a.img_[i] <=> b.img_[i]; c != 0) return c;
    return std::strong_ordering::equal;
  }

 private:
  static void check_degree(int degree) {
    if (degree < 1 || degree > kMaxDegree)
      throw DomainError("permutation degree must lie in 1.." + std::to_string(kMaxDegree));
  }

  std::uint8_t degree_ = 0;
  std::array<std::uint8_t, kMaxDegree> img_{};
};

inline Permutation Permutation::parse_cycles(std::string_view text, int degree) {
  Permutation result = identity(degree);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle string \"" + std::string(text) + "\"");
    ++i;
    std::vector<int> cycle;
    skip_ws();
    while (true) {
      skip_ws();
      if (i >= text.size()) throw ParseError("unterminated cycle in \"" + std::string(text) + "\"");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!cycle.empty()) {
        if (text[i] != ',') throw ParseError("expected ',' in cycle string \"" + std::string(text) + "\"");
        ++i;
        skip_ws();
      }
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw ParseError("expected a point in cycle string \"" + std::string(text) + "\"");
      if (i - start > 4) throw DomainError("point out of range in \"" + std::string(text) + "\"");
      const int pt = std::stoi(std::string(text.substr(start, i - start)));
      if (pt < 1 || pt > degree)
        throw DomainError("point " + std::to_string(pt) + " out of range 1.." + std::to_string(degree));
      if (std::find(cycle.begin(), cycle.end(), pt - 1) != cycle.end())
        throw ParseError("repeated point within a cycle in \"" + std::string(text) + "\"");
      cycle.push_back(pt - 1);
    }
    Permutation c = identity(degree);
    for (std::size_t k = 0; k < cycle.size(); ++k)
      c.img_[cycle[k]] = static_cast<std::uint8_t>(cycle[(k + 1) % cycle.size()]);
    result = c * result;  // left-to-right application
    skip_ws();
  }
  return result;
}

/// Splits "g1; g2; ..." into permutations. Empty entries are rejected.
inline std::vector<Permutation> parse_generator_list(std::string_view text, int degree) {
  std::vector<Permutation> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view piece = text.substr(start, end - start);
    bool blank = std::all_of(piece.begin(), piece.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (blank) throw ParseError("empty generator in list \"" + std::string(text) + "\"");
    out.push_back(Permutation::parse_cycles(piece, degree));
    start = end + 1;
  }
  return out;
}

}  // namespace m0n

template <>
struct std::hash<m0n::Permutation> {
  std::size_t operator()(const m0n::Permutation& p) const noexcept {
    return std::hash<std::uint64_t>{}(p.key() * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(p.degree()));
  }
};

#endif  // M0N_PERMGROUP_PERMUTATION_HPP
