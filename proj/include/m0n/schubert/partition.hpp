#ifndef M0N_SCHUBERT_PARTITION_HPP
#define M0N_SCHUBERT_PARTITION_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "m0n/errors.hpp"

namespace m0n {

/// Weakly decreasing sequence of positive parts.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] < 0) throw DomainError("partition parts must be nonnegative");
      if (i && parts_[i] > parts_[i - 1]) throw DomainError("partition parts must be weakly decreasing");
    }
  }

  const std::vector<int>& parts() const { return parts_; }
  int height() const { return static_cast<int>(parts_.size()); }
  int weight() const {
    int w = 0;
    for (int x : parts_) w += x;
    return w;
  }
  bool empty() const { return parts_.empty(); }
  /// i-th part, 0-based; zero past the height.
  int operator[](std::size_t i) const { return i < parts_.size() ? parts_[i] : 0; }

  Partition transpose() const {
    std::vector<int> t(parts_.empty() ? 0 : parts_[0], 0);
    for (int x : parts_)
      for (int j = 0; j < x; ++j) ++t[j];
    return Partition(std::move(t));
  }

  /// Diagram inclusion.
  bool contains(const Partition& mu) const {
    if (mu.height() > height()) return false;
    for (std::size_t i = 0; i < mu.parts_.size(); ++i)
      if (mu.parts_[i] > parts_[i]) return false;
    return true;
  }

  bool fits(int p, int q) const { return height() <= p && (parts_.empty() || parts_[0] <= q); }

  /// Complement inside the p x q rectangle, rotated: (q - l_p, ..., q - l_1).
  Partition complement(int p, int q) const {
    if (!fits(p, q)) throw DomainError("partition does not fit the box");
    std::vector<int> c(p);
    for (int i = 0; i < p; ++i) c[i] = q - (*this)[p - 1 - i];
    return Partition(std::move(c));
  }

  /// "(5,3,1)"; the empty partition is "()".
  std::string to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(parts_[i]);
    }
    return out + ")";
  }

  /// Accepts "5,3,1", "(5,3,1)", "()" or "".
  static Partition parse(std::string_view text) {
    std::string s;
    for (char c : text)
      if (c != ' ' && c != '\t') s += c;
    if (!s.empty() && s.front() == '(') {
      if (s.back() != ')') throw ParseError("unbalanced parenthesis in partition");
      s = s.substr(1, s.size() - 2);
    }
    std::vector<int> parts;
    if (s.empty()) return Partition();
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const std::size_t end = std::min(s.find(',', pos), s.size());
      const std::string tok = s.substr(pos, end - pos);
      if (tok.empty() || tok.size() > 6 || !std::all_of(tok.begin(), tok.end(), ::isdigit))
        throw ParseError("bad partition part '" + tok + "'");
      parts.push_back(std::stoi(tok));
      pos = end + 1;
    }
    return Partition(std::move(parts));
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) {
    if (a.weight() != b.weight()) return a.weight() <=> b.weight();
    // Larger partitions first in dominance-like reading order.
    return b.parts_ <=> a.parts_;
  }

 private:
  std::vector<int> parts_;
};

/// All partitions fitting the p x q box, optionally of a fixed weight.
inline std::vector<Partition> partitions_in_box(int p, int q, int weight = -1) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int max_part, int remaining) {
    if (weight < 0 || remaining == 0) out.emplace_back(cur);
    if (static_cast<int>(cur.size()) == p) return;
    for (int x = 1; x <= max_part; ++x) {
      if (weight >= 0 && x > remaining) break;
      cur.push_back(x);
      rec(x, weight >= 0 ? remaining - x : remaining);
      cur.pop_back();
    }
  };
  if (p < 0 || q < 0) return out;
  rec(q, weight < 0 ? 0 : weight);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace m0n

#endif  // M0N_SCHUBERT_PARTITION_HPP
