#pragma once

#include "nicolai/scalar.hpp"

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace nicolai::car {

/// Lattice coordinate of a fermion mode.  Any integer is valid; the parity
/// of a site only acquires meaning at the model layer.
using Site = int;

/// Normal-ordered product of CAR generators: creation operators on strictly
/// ascending sites to the left of annihilation operators on strictly
/// ascending sites.  The empty monomial is the identity.
class Monomial {
 public:
  Monomial() = default;
  Monomial(std::vector<Site> creations, std::vector<Site> annihilations);

  const std::vector<Site>& creations() const { return cre_; }
  const std::vector<Site>& annihilations() const { return ann_; }

  int degree() const { return static_cast<int>(cre_.size() + ann_.size()); }
  int parity() const { return degree() & 1; }  // 0 even, 1 odd
  bool is_identity() const { return cre_.empty() && ann_.empty(); }

  auto operator<=>(const Monomial&) const = default;

 private:
  std::vector<Site> cre_;
  std::vector<Site> ann_;
};

/// Smallest integer interval containing a set of sites; empty for scalars.
struct Interval {
  Site left = 0;
  Site right = -1;

  static Interval empty() { return {}; }
  static Interval of(Site l, Site r) { return {l, r}; }

  bool is_empty() const { return left > right; }
  int width() const { return is_empty() ? 0 : right - left + 1; }
  bool contains(const Interval& o) const {
    return o.is_empty() || (!is_empty() && left <= o.left && o.right <= right);
  }
  bool disjoint(const Interval& o) const {
    return is_empty() || o.is_empty() || right < o.left || o.right < left;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Finite complex-linear combination of normal-ordered monomials.  All
/// operations keep the canonical form, so equality of polynomials is
/// structural and "is zero" is decidable.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Scalar>;

  Polynomial() = default;

  static Polynomial zero() { return {}; }
  static Polynomial identity(Scalar c = Scalar(1));
  static Polynomial term(Monomial m, Scalar c = Scalar(1));

  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool exact() const;
  Scalar coefficient(const Monomial& m) const;

  /// Accumulates c * m, pruning the entry if the total cancels.
  void add_term(const Monomial& m, const Scalar& c);

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Scalar& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    return a += b;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    return a -= b;
  }
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.terms_ == b.terms_;
  }

 private:
  TermMap terms_;
};

// Generators.
Polynomial annihilator(Site i);
Polynomial creator(Site i);
Polynomial number_op(Site i);

/// Normal-ordered product; associative, distributes over addition, with
/// exact sign bookkeeping from the anticommutation relations.
Polynomial multiply(const Polynomial& a, const Polynomial& b);

/// The *-operation: antilinear involution with (ab)* = b* a*.
Polynomial adjoint(const Polynomial& a);

struct GradedPair {
  Polynomial even;
  Polynomial odd;
};

/// Splits by monomial length parity; even + odd reconstructs the input.
GradedPair grade_parts(const Polynomial& a);

/// Parity of a homogeneous polynomial: 0 even, 1 odd (zero counts as both
/// and reports 0).  Throws NonHomogeneousArgument on mixed input.
int parity_of(const Polynomial& a);
bool is_homogeneous(const Polynomial& a);

/// Image under the grading automorphism: odd part negated.
Polynomial grading(const Polynomial& a);

/// Graded commutator [a, b] = ab - (-1)^{|a||b|} ba, extended bilinearly
/// over the grade split of b.  Requires homogeneous a.
Polynomial graded_commutator(const Polynomial& a, const Polynomial& b);
Polynomial anticommutator(const Polynomial& a, const Polynomial& b);
Polynomial commutator(const Polynomial& a, const Polynomial& b);

/// Lattice translation by k sites; an algebra homomorphism.
Polynomial shift(const Polynomial& a, int k);

/// Relabels every site through f, re-establishing canonical order with the
/// exact anticommutation signs.  Terms where two generators of the same kind
/// collide vanish.
Polynomial map_sites(const Polynomial& a,
                     const std::function<Site(Site)>& f);

Interval support(const Monomial& m);

/// Smallest interval containing every site of every monomial.  Throws
/// EmptySupport for the zero polynomial; identity-only polynomials report
/// the empty interval.
Interval support(const Polynomial& a);

/// One term per line, `coeff * c*_{i} ... c_{j} ...`; identity terms print
/// as `coeff * 1` and the zero polynomial as `0`.
std::string to_text(const Polynomial& a);
Polynomial parse_polynomial(const std::string& text);

bool approx_equal(const Polynomial& a, const Polynomial& b, double tol);

inline std::ostream& operator<<(std::ostream& os, const Polynomial& a) {
  return os << to_text(a);
}

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
  if (iv.is_empty()) return os << "[]";
  return os << '[' << iv.left << ", " << iv.right << ']';
}

}  // namespace nicolai::car
