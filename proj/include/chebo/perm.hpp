#pragma once

// Permutations on {0,...,n-1}. Points act on the right and products read
// left to right: (a*b) sends x to b[a[x]]. The external cycle notation is
// 1-indexed with fixed points omitted and cycles sorted by least moved
// point, e.g. "(1,2,3)(4,5)".

#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "chebo/common.hpp"

namespace chebo {

class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t degree) : img_(degree) {
    for (std::size_t i = 0; i < degree; ++i) img_[i] = static_cast<std::uint16_t>(i);
  }
  explicit Perm(std::vector<std::uint16_t> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (auto v : img_) {
      require(v < img_.size() && !seen[v], errc::malformed_permutation,
              "images are not a bijection");
      seen[v] = true;
    }
  }

  std::size_t degree() const { return img_.size(); }
  std::uint16_t operator[](std::size_t i) const { return img_[i]; }
  std::uint16_t apply(std::size_t i) const { return img_[i]; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  // least moved point, or degree() if identity
  std::size_t first_moved() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return i;
    return img_.size();
  }

  friend Perm operator*(const Perm& a, const Perm& b) {
    require(a.degree() == b.degree(), errc::malformed_permutation, "degree mismatch");
    Perm r;
    r.img_.resize(a.degree());
    for (std::size_t i = 0; i < a.degree(); ++i) r.img_[i] = b.img_[a.img_[i]];
    return r;
  }

  Perm inverse() const {
    Perm r;
    r.img_.resize(degree());
    for (std::size_t i = 0; i < degree(); ++i) r.img_[img_[i]] = static_cast<std::uint16_t>(i);
    return r;
  }

  // g^-1 * this * g
  Perm conjugated_by(const Perm& g) const { return g.inverse() * (*this) * g; }

  friend bool operator==(const Perm& a, const Perm& b) { return a.img_ == b.img_; }
  friend auto operator<=>(const Perm& a, const Perm& b) { return a.img_ <=> b.img_; }

  const std::vector<std::uint16_t>& images() const { return img_; }

  std::string to_cycles() const {
    std::vector<bool> done(degree(), false);
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i < degree(); ++i) {
      if (done[i] || img_[i] == i) continue;
      any = true;
      os << '(';
      std::size_t j = i;
      bool first = true;
      do {
        if (!first) os << ',';
        os << j + 1;
        done[j] = true;
        first = false;
        j = img_[j];
      } while (j != i);
      os << ')';
    }
    if (!any) return "()";
    return os.str();
  }

 private:
  std::vector<std::uint16_t> img_;
};

// Parse 1-indexed cycle notation, e.g. "(1,2,3)(4,5)" or "()".
inline Perm parse_cycles(std::size_t degree, const std::string& text) {
  std::vector<std::uint16_t> img(degree);
  for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<std::uint16_t>(i);
  std::size_t pos = 0;
  auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
  skip_ws();
  std::vector<bool> used(degree, false);
  while (pos < text.size()) {
    require(text[pos] == '(', errc::usage, "expected '(' in cycle notation: " + text);
    ++pos;
    std::vector<std::size_t> cyc;
    skip_ws();
    while (pos < text.size() && text[pos] != ')') {
      std::size_t val = 0, start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        val = val * 10 + static_cast<std::size_t>(text[pos++] - '0');
      require(pos > start, errc::usage, "expected point number in cycles: " + text);
      require(val >= 1 && val <= degree, errc::usage, "cycle point out of range: " + text);
      require(!used[val - 1], errc::usage, "point repeated across cycles: " + text);
      used[val - 1] = true;
      cyc.push_back(val - 1);
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        skip_ws();
      }
    }
    require(pos < text.size(), errc::usage, "unterminated cycle: " + text);
    ++pos;  // ')'
    for (std::size_t i = 0; i + 1 < cyc.size(); ++i) img[cyc[i]] = static_cast<std::uint16_t>(cyc[i + 1]);
    if (cyc.size() > 1) img[cyc.back()] = static_cast<std::uint16_t>(cyc.front());
    skip_ws();
  }
  return Perm(std::move(img));
}

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : p.images()) {
      h ^= v;
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace chebo
