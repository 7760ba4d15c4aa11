#include "nicolai/model.hpp"

#include "nicolai/errors.hpp"

#include <string>

namespace nicolai::model {

using car::adjoint;
using car::annihilator;
using car::creator;
using car::graded_commutator;
using car::multiply;

namespace {

void check_even_positive(int m, int n) {
  if (m < 2 || n < 2 || m % 2 != 0 || n % 2 != 0)
    throw BadRegionParity("region parameters must be positive even, got M=" +
                          std::to_string(m) + " N=" + std::to_string(n));
}

// One interaction triple c_{2k-1} c*_{2k} c_{2k+1}, with the last leg
// remapped for the periodic fold.
Polynomial triple(Site a, Site b, Site c) {
  return multiply(multiply(annihilator(a), creator(b)), annihilator(c));
}

}  // namespace

Region Region::periodic(int m, int n) {
  check_even_positive(m, n);
  return {-m + 1, n, Boundary::periodic};
}

Region Region::free(int m, int n) {
  check_even_positive(m, n);
  return {-m + 1, n + 1, Boundary::free};
}

Polynomial supercharge(const SuperchargeSpec& spec) {
  return spec.region.boundary == Boundary::periodic
             ? periodic_supercharge(spec)
             : free_supercharge(spec);
}

Polynomial periodic_supercharge(const SuperchargeSpec& spec) {
  if (spec.region.boundary != Boundary::periodic)
    throw Error("periodic_supercharge needs a periodic region");
  const int m = spec.region.m();
  const int n = spec.region.n();
  Polynomial q;
  for (int k = -m / 2 + 1; k <= n / 2; ++k) {
    const Site a = 2 * k - 1;
    const Site b = 2 * k;
    Site c = 2 * k + 1;
    if (c == n + 1) c = -m + 1;  // wrap the dangling arm
    if (!spec.g.is_zero()) q += spec.g * annihilator(a);
    q += triple(a, b, c);
  }
  return q;
}

Polynomial free_supercharge(const SuperchargeSpec& spec) {
  if (spec.region.boundary != Boundary::free)
    throw Error("free_supercharge needs a free region");
  const int m = spec.region.m();
  const int n = spec.region.n();
  Polynomial q;
  for (int k = -m / 2 + 1; k <= n / 2; ++k) {
    const Site a = 2 * k - 1;
    if (!spec.g.is_zero()) q += spec.g * annihilator(a);
    q += triple(a, 2 * k, 2 * k + 1);
  }
  if (!spec.g.is_zero()) q += spec.g * annihilator(n + 1);
  return q;
}

Polynomial local_hamiltonian(const Polynomial& q) {
  if (q.is_zero()) return {};
  if (car::parity_of(q) != 1)
    throw NonHomogeneousArgument("supercharge must be odd-graded");
  return car::anticommutator(q, adjoint(q));
}

Region margin_region(const Interval& support) {
  // Two margin sites on each flank keep every generator of the truncated
  // supercharge that can fail to anticommute with the argument identical
  // to its infinite-volume form, and keep the folded arm away from the
  // support.  Clamp to the smallest legal region.
  int s = 0;  // left extent: region starts at -S+1
  int t = 0;  // right extent: region ends at T
  if (!support.is_empty()) {
    s = 1 - support.left;
    t = support.right;
  }
  if (s < 0) s = 0;
  if (t < 0) t = 0;
  if (s % 2 != 0) ++s;
  if (t % 2 != 0) ++t;
  return Region::periodic(s + 2, t + 2);
}

Region hamiltonian_region(const Interval& support) {
  Region margin = margin_region(support);
  return Region::periodic(margin.m() + 2, margin.n() + 2);
}

Polynomial superderivation(const Scalar& g, const Polynomial& a) {
  if (a.is_zero()) return {};
  Interval s = car::support(a);
  Polynomial q = periodic_supercharge({g, margin_region(s)});
  return graded_commutator(q, a);
}

Polynomial superderivation_adj(const Scalar& g, const Polynomial& a) {
  if (a.is_zero()) return {};
  Interval s = car::support(a);
  Polynomial q = periodic_supercharge({g, margin_region(s)});
  return graded_commutator(adjoint(q), a);
}

Polynomial susy_laplacian(const Scalar& g, const Polynomial& a) {
  return superderivation_adj(g, superderivation(g, a)) +
         superderivation(g, superderivation_adj(g, a));
}

Polynomial witness_operator(const Scalar& g, int k) {
  if (g.is_zero())
    throw ZeroCoupling("witness operator needs a nonzero coupling");
  const Scalar ig = g.inverse();
  const Site a = 2 * k - 3, b = 2 * k - 2, c = 2 * k, d = 2 * k + 1;
  Polynomial inner = Polynomial::identity();
  inner -= ig * (multiply(creator(c), annihilator(d)) +
                 multiply(annihilator(a), creator(b)));
  inner += (Scalar(2) * ig * ig) *
           multiply(multiply(annihilator(a), creator(b)),
                    multiply(creator(c), annihilator(d)));
  return multiply(creator(2 * k - 1), inner);
}

Polynomial averaged_witness(const Scalar& g, int n) {
  if (n < 1) throw Error("averaged witness needs n >= 1");
  Polynomial sum;
  for (int k = 1; k <= n; ++k) sum += witness_operator(g, k);
  sum *= Scalar(Rational(1, n));
  return sum;
}

}  // namespace nicolai::model
