#pragma once

// Coefficient arithmetic over F2[U_1, ..., U_N] and free modules with a
// distinguished basis. Coefficients live in F2, so a term is either present
// or absent and adding a term twice cancels it.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace gridslice {

/// Raised when two objects built for different ambient N are combined.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kMaxVariables = 15;

/// A monomial U_1^{e_1} ... U_N^{e_N}, stored densely.
class Monomial {
 public:
  Monomial() = default;

  /// The unit monomial in `n` variables.
  explicit Monomial(int n);

  /// Exponents listed for U_1, ..., U_N.
  Monomial(std::initializer_list<int> exponents);
  explicit Monomial(const std::vector<int>& exponents);

  static Monomial unit(int n) { return Monomial(n); }
  /// U_index, 1-based as in the grid conventions.
  static Monomial variable(int n, int index);

  int size() const { return n_; }
  /// Exponent of U_{i+1}.
  int operator[](int i) const { return exps_[static_cast<std::size_t>(i)]; }
  int degree() const;
  bool is_unit() const { return degree() == 0; }

  std::vector<int> exponents() const;
  std::string to_string() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  Monomial& operator*=(const Monomial& other) { return *this = *this * other; }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;

 private:
  std::uint8_t n_ = 0;
  std::array<std::uint8_t, kMaxVariables> exps_{};
};

/// One basis term of a free module: a monomial times a basis tag.
template <class Tag>
struct Term {
  Monomial mono;
  Tag tag;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

/// An F2-linear combination of (monomial, tag) pairs. Terms are kept sorted
/// and unique; the zero element has no terms.
template <class Tag>
class FreeElement {
 public:
  using term_type = Term<Tag>;
  using const_iterator = typename std::vector<term_type>::const_iterator;

  FreeElement() = default;

  /// Builds an element from an arbitrary list; repeated terms cancel in pairs.
  static FreeElement from_terms(std::vector<term_type> terms) {
    std::sort(terms.begin(), terms.end());
    FreeElement out;
    out.terms_.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size();) {
      std::size_t j = i + 1;
      while (j < terms.size() && terms[j] == terms[i]) ++j;
      if ((j - i) % 2 == 1) out.terms_.push_back(std::move(terms[i]));
      i = j;
    }
    return out;
  }

  static FreeElement single(Monomial m, Tag t) {
    FreeElement out;
    out.terms_.push_back({std::move(m), std::move(t)});
    return out;
  }

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const std::vector<term_type>& terms() const { return terms_; }

  bool contains(const term_type& t) const {
    return std::binary_search(terms_.begin(), terms_.end(), t);
  }

  FreeElement& operator+=(const FreeElement& other) {
    std::vector<term_type> merged;
    merged.reserve(terms_.size() + other.terms_.size());
    std::set_symmetric_difference(terms_.begin(), terms_.end(),
                                  other.terms_.begin(), other.terms_.end(),
                                  std::back_inserter(merged));
    terms_ = std::move(merged);
    return *this;
  }

  friend FreeElement operator+(FreeElement a, const FreeElement& b) {
    a += b;
    return a;
  }

  friend bool operator==(const FreeElement&, const FreeElement&) = default;

 private:
  std::vector<term_type> terms_;
};

/// Collects terms without cancelling, then canonicalizes once. Cheaper than
/// repeated FreeElement additions when many terms are produced.
template <class Tag>
class Accumulator {
 public:
  void add(Monomial m, Tag t) { terms_.push_back({std::move(m), std::move(t)}); }

  void add(const FreeElement<Tag>& e) {
    terms_.insert(terms_.end(), e.begin(), e.end());
  }

  void add_scaled(const Monomial& m, const FreeElement<Tag>& e) {
    for (const auto& t : e) terms_.push_back({m * t.mono, t.tag});
  }

  FreeElement<Tag> finish() { return FreeElement<Tag>::from_terms(std::move(terms_)); }

 private:
  std::vector<Term<Tag>> terms_;
};

/// Ambient N of an element, or -1 for the zero element. Throws if the terms
/// disagree.
template <class Tag>
int ambient_size(const FreeElement<Tag>& e) {
  int n = -1;
  for (const auto& t : e) {
    if (n >= 0 && t.mono.size() != n) throw DimensionError("mixed monomial sizes in element");
    n = t.mono.size();
  }
  return n;
}

template <class Tag>
FreeElement<Tag> element_add(const FreeElement<Tag>& a, const FreeElement<Tag>& b) {
  int na = ambient_size(a);
  int nb = ambient_size(b);
  if (na >= 0 && nb >= 0 && na != nb) throw DimensionError("element_add: ambient N differs");
  return a + b;
}

/// Multiplies every term by `m` and pushes its tag through `relabel`.
/// Colliding images cancel in pairs.
template <class Tag, class Relabel>
auto element_scale(const Monomial& m, Relabel&& relabel, const FreeElement<Tag>& e) {
  using Out = std::decay_t<std::invoke_result_t<Relabel, const Tag&>>;
  std::vector<Term<Out>> terms;
  terms.reserve(e.size());
  for (const auto& t : e) terms.push_back({m * t.mono, relabel(t.tag)});
  return FreeElement<Out>::from_terms(std::move(terms));
}

template <class Tag>
FreeElement<Tag> element_scale(const Monomial& m, const FreeElement<Tag>& e) {
  return element_scale(m, [](const Tag& t) { return t; }, e);
}

}  // namespace gridslice
