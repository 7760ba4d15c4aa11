#include "nicolai/fock.hpp"

#include "nicolai/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>

namespace nicolai::fock {

namespace {

// Parity of the number of occupied slots strictly below `slot`.
inline int crossing_sign(std::uint64_t bits, int slot) {
  std::uint64_t below = bits & ((std::uint64_t{1} << slot) - 1);
  return std::popcount(below) & 1 ? -1 : 1;
}

// Slot lists of one monomial, precomputed for the per-state loop.
struct MappedMonomial {
  std::vector<int> ann_desc;  // annihilated slots, applied high to low
  std::vector<int> cre_desc;  // created slots, applied high to low
  std::uint64_t ann_mask = 0;
  std::uint64_t cre_mask = 0;
  std::complex<double> coeff;
};

}  // namespace

Window::Window(std::vector<Site> sites, int cap) : sites_(std::move(sites)) {
  if (sites_.empty()) throw EmptyInput("window needs at least one site");
  if (!std::is_sorted(sites_.begin(), sites_.end()) ||
      std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end())
    throw Error("window sites must be strictly ascending");
  if (static_cast<int>(sites_.size()) > cap ||
      static_cast<int>(sites_.size()) > kMaxWindowSites)
    throw WindowTooLarge("window of " + std::to_string(sites_.size()) +
                         " sites exceeds the cap of " +
                         std::to_string(std::min<int>(cap, kMaxWindowSites)));
}

Window Window::interval(Site left, Site right, int cap) {
  if (left > right) throw EmptyInput("empty window interval");
  std::vector<Site> sites;
  sites.reserve(static_cast<std::size_t>(right - left + 1));
  for (Site s = left; s <= right; ++s) sites.push_back(s);
  return Window(std::move(sites), cap);
}

Window Window::of_region(const model::Region& region, int cap) {
  return interval(region.left, region.right, cap);
}

int Window::slot(Site s) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), s);
  if (it == sites_.end() || *it != s) return -1;
  return static_cast<int>(it - sites_.begin());
}

bool Window::contains(const Polynomial& a) const {
  for (const auto& [m, c] : a.terms()) {
    for (Site s : m.creations())
      if (slot(s) < 0) return false;
    for (Site s : m.annihilations())
      if (slot(s) < 0) return false;
  }
  return true;
}

FockOperator represent(const Polynomial& a, const Window& w) {
  std::vector<MappedMonomial> mapped;
  mapped.reserve(a.term_count());
  for (const auto& [m, c] : a.terms()) {
    MappedMonomial mm;
    mm.coeff = c.to_complex();
    for (auto it = m.annihilations().rbegin(); it != m.annihilations().rend();
         ++it) {
      int p = w.slot(*it);
      if (p < 0)
        throw SupportOutsideWindow("site " + std::to_string(*it) +
                                   " lies outside the window");
      mm.ann_desc.push_back(p);
      mm.ann_mask |= std::uint64_t{1} << p;
    }
    for (auto it = m.creations().rbegin(); it != m.creations().rend(); ++it) {
      int p = w.slot(*it);
      if (p < 0)
        throw SupportOutsideWindow("site " + std::to_string(*it) +
                                   " lies outside the window");
      mm.cre_desc.push_back(p);
      mm.cre_mask |= std::uint64_t{1} << p;
    }
    mapped.push_back(std::move(mm));
  }

  const std::size_t dim = w.dim();
  std::vector<Eigen::Triplet<std::complex<double>>> entries;
  for (const MappedMonomial& mm : mapped) {
    for (std::size_t s = 0; s < dim; ++s) {
      // the state must contain what gets annihilated and must be free
      // where something is created (unless that slot is emptied first)
      if ((s & mm.ann_mask) != mm.ann_mask) continue;
      if (((s & ~mm.ann_mask) & mm.cre_mask) != 0) continue;
      std::uint64_t bits = s;
      int sign = 1;
      for (int p : mm.ann_desc) {
        sign *= crossing_sign(bits, p);
        bits &= ~(std::uint64_t{1} << p);
      }
      for (int p : mm.cre_desc) {
        sign *= crossing_sign(bits, p);
        bits |= std::uint64_t{1} << p;
      }
      entries.emplace_back(static_cast<int>(bits), static_cast<int>(s),
                           double(sign) * mm.coeff);
    }
  }

  FockOperator op{w, SparseMatrix(static_cast<long>(dim),
                                  static_cast<long>(dim)),
                  false};
  op.matrix.setFromTriplets(entries.begin(), entries.end());
  op.matrix.prune(std::complex<double>(0.0), 0.0);
  op.matrix.makeCompressed();
  op.hermitian = a.exact() ? car::adjoint(a) == a
                           : car::approx_equal(car::adjoint(a), a, 1e-12);
  return op;
}

namespace {

NormResult dense_norm(const FockOperator& op) {
  NormResult r;
  r.method = NormMethod::dense_eig;
  if (op.hermitian) {
    Eigen::MatrixXcd dense(op.matrix);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        dense, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    r.value = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  } else {
    SparseMatrix gram = SparseMatrix(op.matrix.adjoint()) * op.matrix;
    Eigen::MatrixXcd dense(gram);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        dense, Eigen::EigenvaluesOnly);
    r.value = std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
  }
  return r;
}

NormResult iterative_norm(const FockOperator& op, double rel_tol,
                          std::uint64_t seed, int max_iterations) {
  NormResult r;
  r.method = NormMethod::iterative;
  const long dim = op.matrix.rows();
  SparseMatrix adj = op.matrix.adjoint();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto random_unit = [&] {
    Eigen::VectorXcd v(dim);
    for (long i = 0; i < dim; ++i) v(i) = {gauss(rng), gauss(rng)};
    v.normalize();
    return v;
  };

  Eigen::VectorXcd v = random_unit();
  double lambda = 0.0;
  double resid = 0.0;
  for (int it = 1; it <= max_iterations; ++it) {
    r.iterations = it;
    Eigen::VectorXcd u = adj * (op.matrix * v);  // (A*A) v
    lambda = u.dot(v).real();
    resid = (u - lambda * v).norm();
    if (resid <= rel_tol * std::max(lambda, 1e-300)) {
      r.converged = true;
      break;
    }
    double len = u.norm();
    if (len == 0.0) {
      // landed exactly in the kernel of A; restart elsewhere
      v = random_unit();
      continue;
    }
    v = u / len;
    r.converged = false;
  }
  r.value = std::sqrt(std::max(0.0, lambda));
  r.residual = resid;
  return r;
}

}  // namespace

NormResult operator_norm(const FockOperator& op, NormMethod method,
                         double rel_tol, std::uint64_t seed,
                         int max_iterations) {
  if (method == NormMethod::automatic)
    method = op.window.size() <= 12 ? NormMethod::dense_eig
                                    : NormMethod::iterative;
  if (method == NormMethod::dense_eig) return dense_norm(op);
  return iterative_norm(op, rel_tol, seed, max_iterations);
}

std::complex<double> expectation(const FockOperator& op,
                                 const FockVector& v) {
  if (!(op.window == v.window))
    throw WindowMismatch("operator and vector live on different windows");
  if (v.amplitudes.size() != op.matrix.rows())
    throw WindowMismatch("vector length does not match the Fock dimension");
  return v.amplitudes.dot(op.matrix * v.amplitudes);
}

void write_coordinate_text(const FockOperator& op, std::ostream& os) {
  char line[160];
  std::snprintf(line, sizeof(line), "%ld %ld\n", long(op.matrix.rows()),
                long(op.matrix.nonZeros()));
  os << line;
  for (int k = 0; k < op.matrix.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(op.matrix, k); it; ++it) {
      std::snprintf(line, sizeof(line), "%ld %ld %.17g %.17g\n",
                    long(it.row()), long(it.col()), it.value().real(),
                    it.value().imag());
      os << line;
    }
  }
}

}  // namespace nicolai::fock
