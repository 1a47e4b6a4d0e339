#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace ietlab {

// A bijection of {1..n}, stored as its list of images and indexed 1-based.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
    int n = size();
    if (n < 1) throw Error(ErrorCode::invalid_permutation, "empty permutation");
    inverse_.assign(images_.size(), 0);
    for (int i = 1; i <= n; ++i) {
      int v = images_[i - 1];
      if (v < 1 || v > n || inverse_[v - 1] != 0)
        throw Error(ErrorCode::invalid_permutation, "'" + to_string() + "' is not a bijection of 1.." + std::to_string(n));
      inverse_[v - 1] = i;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = i + 1;
    return Permutation(std::move(v));
  }

  // Space-separated images, e.g. "2 1".
  static Permutation parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<int> v;
    int x;
    while (in >> x) v.push_back(x);
    if (!in.eof()) throw Error(ErrorCode::invalid_permutation, "bad permutation text '" + std::string(text) + "'");
    return Permutation(std::move(v));
  }

  int size() const { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[i - 1]; }
  int inverse(int v) const { return inverse_[v - 1]; }
  const std::vector<int>& images() const { return images_; }

  friend bool operator==(const Permutation& x, const Permutation& y) { return x.images_ == y.images_; }
  friend auto operator<=>(const Permutation& x, const Permutation& y) { return x.images_ <=> y.images_; }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < images_.size(); ++i) s += (i ? " " : "") + std::to_string(images_[i]);
    return s;
  }

 private:
  std::vector<int> images_;
  std::vector<int> inverse_;
};

// True iff no proper prefix {1..k} is mapped onto itself.
inline bool irreducible(const Permutation& sigma) {
  int max_image = 0;
  for (int k = 1; k < sigma.size(); ++k) {
    max_image = std::max(max_image, sigma(k));
    if (max_image == k) return false;
  }
  return true;
}

// All permutations of {1..n} in lexicographic order.
inline std::vector<Permutation> all_permutations(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[i] = i + 1;
  std::vector<Permutation> out;
  do out.emplace_back(v);
  while (std::next_permutation(v.begin(), v.end()));
  return out;
}

}  // namespace ietlab
