#pragma once

#include "nicolai/car.hpp"

namespace nicolai::model {

using car::Interval;
using car::Polynomial;
using car::Site;

enum class Boundary { periodic, free };

/// Finite lattice window [-M+1, N] (periodic) or [-M+1, N+1] (free) with
/// M, N positive and even, so that interaction triples align with the
/// odd/even sublattice pattern.
struct Region {
  Site left = -1;
  Site right = 0;
  Boundary boundary = Boundary::periodic;

  static Region periodic(int m, int n);
  static Region free(int m, int n);

  int m() const { return 1 - left; }
  int n() const {
    return boundary == Boundary::periodic ? right : right - 1;
  }
  int num_sites() const { return right - left + 1; }
  Interval interval() const { return Interval::of(left, right); }

  friend bool operator==(const Region&, const Region&) = default;
};

struct SuperchargeSpec {
  Scalar g;
  Region region;
};

/// Supercharge truncated to a finite region.  The periodic variant folds
/// the dangling interaction arm back to the left edge (site N+1 is
/// identified with -M+1); the free variant keeps all three legs inside
/// [-M+1, N+1] and appends the extra driving term g c_{N+1}.
Polynomial supercharge(const SuperchargeSpec& spec);
Polynomial periodic_supercharge(const SuperchargeSpec& spec);
Polynomial free_supercharge(const SuperchargeSpec& spec);

/// H = Q Q* + Q* Q for an odd supercharge.  Even part of a nilpotent odd
/// square root; positive semidefinite in any Fock representation.
Polynomial local_hamiltonian(const Polynomial& q);

/// Smallest admissible region whose supercharge acts like the infinite one
/// on anything supported in `support`: two sites of margin on each side,
/// rounded out to the even M, N the region constructor demands.
Region margin_region(const Interval& support);

/// Region whose local Hamiltonian reproduces the SUSY Laplacian as a plain
/// commutator: one extra pair of sites on each side of the margin region.
/// The Hamiltonian is quadratic in supercharge terms, so its reach exceeds
/// the superderivation's by one term length.
Region hamiltonian_region(const Interval& support);

/// Superderivation a -> [Q(g), a] with the graded commutator, evaluated
/// with the supercharge of margin_region(support(a)).  The margin makes the
/// value independent of the truncation, so this is the action of the formal
/// infinite-volume supercharge.
Polynomial superderivation(const Scalar& g, const Polynomial& a);

/// Adjoint superderivation a -> [Q(g)*, a].
Polynomial superderivation_adj(const Scalar& g, const Polynomial& a);

/// delta* . delta + delta . delta* — the infinite-volume analogue of
/// commuting with H.
Polynomial susy_laplacian(const Scalar& g, const Polynomial& a);

/// Local witness O_k with superderivation image exactly g:
///   O_k = c*_{2k-1} (1 - (1/g)(c*_{2k} c_{2k+1} + c_{2k-3} c*_{2k-2})
///                      + (2/g^2) c_{2k-3} c*_{2k-2} c*_{2k} c_{2k+1}).
/// Throws ZeroCoupling when g = 0.
Polynomial witness_operator(const Scalar& g, int k);

/// o(n) = (1/n) sum_{k=1..n} O_k, the Cesaro average whose norm decays
/// like 1/sqrt(n) while its superderivation image stays pinned at g.
Polynomial averaged_witness(const Scalar& g, int n);

}  // namespace nicolai::model
