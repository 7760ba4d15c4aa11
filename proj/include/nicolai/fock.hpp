#pragma once

#include "nicolai/car.hpp"
#include "nicolai/model.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace nicolai::fock {

using car::Polynomial;
using car::Site;

/// Hard ceiling on window size; 2^20 basis states is the largest Fock
/// space this code will materialize.
inline constexpr int kMaxWindowSites = 20;

using SparseMatrix = Eigen::SparseMatrix<std::complex<double>>;

/// Ordered finite set of lattice sites carrying a Fock space.  Occupation
/// bitstrings index the basis; the slot of the smallest site is the least
/// significant bit.
class Window {
 public:
  explicit Window(std::vector<Site> sites, int cap = kMaxWindowSites);
  static Window interval(Site left, Site right, int cap = kMaxWindowSites);
  static Window of_region(const model::Region& region,
                          int cap = kMaxWindowSites);

  const std::vector<Site>& sites() const { return sites_; }
  int size() const { return static_cast<int>(sites_.size()); }
  std::size_t dim() const { return std::size_t{1} << sites_.size(); }

  /// Bit position of a site, or -1 when the site is not in the window.
  int slot(Site s) const;

  /// True when every site of every monomial lies in the window.
  bool contains(const Polynomial& a) const;

  friend bool operator==(const Window&, const Window&) = default;

 private:
  std::vector<Site> sites_;
};

/// Matrix image of a polynomial under the occupation-number
/// representation, with the antisymmetry phases made explicit: a
/// generator at slot p picks up (-1)^(number of occupied slots below p).
struct FockOperator {
  Window window;
  SparseMatrix matrix;
  bool hermitian = false;  // detected symbolically at build time
};

struct FockVector {
  Window window;
  Eigen::VectorXcd amplitudes;
};

/// Builds the sparse matrix of `a` on the Fock space of `w`.  Throws
/// SupportOutsideWindow when a monomial touches a site outside the window.
FockOperator represent(const Polynomial& a, const Window& w);

enum class NormMethod { automatic, dense_eig, iterative };

struct NormResult {
  double value = 0.0;
  NormMethod method = NormMethod::dense_eig;
  bool converged = true;  // false: iteration budget exhausted, value is
                          // the best (one-sided) estimate reached
  int iterations = 0;
  double residual = 0.0;
};

/// Operator norm (largest singular value).  `automatic` solves densely up
/// to 12 window sites and by power iteration on A*A above that.  The
/// iterative path starts from a deterministic seeded vector, so results
/// are reproducible; `converged = false` signals an exhausted iteration
/// budget rather than an exception, and the returned value is the last
/// Rayleigh estimate, a lower bound on the true norm.
NormResult operator_norm(const FockOperator& op,
                         NormMethod method = NormMethod::automatic,
                         double rel_tol = 1e-10, std::uint64_t seed = 7,
                         int max_iterations = 20000);

/// <v, A v>; throws WindowMismatch when the windows differ.
std::complex<double> expectation(const FockOperator& op,
                                 const FockVector& v);

/// Deterministic coordinate text dump: `dim nnz` then one
/// `row col re im` line per stored entry, column-major.
void write_coordinate_text(const FockOperator& op, std::ostream& os);

}  // namespace nicolai::fock
