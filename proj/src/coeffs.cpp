#include "gridslice/coeffs.hpp"

#include <numeric>

namespace gridslice {

namespace {

void check_size(std::size_t n) {
  if (n > static_cast<std::size_t>(kMaxVariables)) {
    throw DimensionError("monomial: at most " + std::to_string(kMaxVariables) + " variables");
  }
}

std::uint8_t checked_exponent(int e) {
  if (e < 0 || e > 255) throw std::out_of_range("monomial exponent out of range");
  return static_cast<std::uint8_t>(e);
}

}  // namespace

Monomial::Monomial(int n) {
  if (n < 0) throw DimensionError("monomial: negative variable count");
  check_size(static_cast<std::size_t>(n));
  n_ = static_cast<std::uint8_t>(n);
}

Monomial::Monomial(std::initializer_list<int> exponents)
    : Monomial(std::vector<int>(exponents)) {}

Monomial::Monomial(const std::vector<int>& exponents) {
  check_size(exponents.size());
  n_ = static_cast<std::uint8_t>(exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) exps_[i] = checked_exponent(exponents[i]);
}

Monomial Monomial::variable(int n, int index) {
  if (index < 1 || index > n) throw DimensionError("monomial: variable index out of range");
  Monomial m(n);
  m.exps_[static_cast<std::size_t>(index - 1)] = 1;
  return m;
}

int Monomial::degree() const {
  return std::accumulate(exps_.begin(), exps_.begin() + n_, 0);
}

std::vector<int> Monomial::exponents() const {
  return std::vector<int>(exps_.begin(), exps_.begin() + n_);
}

std::string Monomial::to_string() const {
  std::string out;
  for (int i = 0; i < n_; ++i) {
    if (exps_[static_cast<std::size_t>(i)] == 0) continue;
    out += "U" + std::to_string(i + 1);
    if (exps_[static_cast<std::size_t>(i)] > 1) out += "^" + std::to_string(exps_[static_cast<std::size_t>(i)]);
  }
  return out.empty() ? "1" : out;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  if (a.n_ != b.n_) {
    throw DimensionError("monomial_mul: " + std::to_string(a.n_) + " vs " + std::to_string(b.n_) +
                         " variables");
  }
  Monomial out(a.n_);
  for (int i = 0; i < a.n_; ++i) {
    auto idx = static_cast<std::size_t>(i);
    out.exps_[idx] = checked_exponent(a.exps_[idx] + b.exps_[idx]);
  }
  return out;
}

}  // namespace gridslice
