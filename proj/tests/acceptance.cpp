// Acceptance harness: drives the full pipeline through nine independent
// criteria, printing exactly one PASS/FAIL line per criterion and exiting
// nonzero when any of them fails.  Exact-arithmetic claims are checked as
// literal zero polynomials; numerical claims carry the tolerance they are
// held to in the line itself.

#include "nicolai/car.hpp"
#include "nicolai/errors.hpp"
#include "nicolai/fock.hpp"
#include "nicolai/model.hpp"
#include "nicolai/scalar.hpp"
#include "nicolai/spectra.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <exception>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

using namespace nicolai;
using car::Interval;
using car::Polynomial;
using model::Region;

namespace {

struct Outcome {
  bool pass = false;
  std::string text;  // everything after the PASS/FAIL tag
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

Scalar ratio(long long num, long long den) {
  return Scalar(Rational(num, den));
}

// ---------------------------------------------------------------- 1 ----
// Both truncated supercharges are nilpotent, exactly, across regions and
// couplings.
Outcome nilpotency() {
  const std::vector<Scalar> gs = {Scalar(0),  ratio(1, 2), ratio(-1, 2),
                                  Scalar(1),  Scalar(-1),  Scalar(2),
                                  Scalar(-2)};
  int checked = 0;
  for (int m : {2, 4, 6, 8}) {
    for (int n : {2, 4, 6, 8}) {
      for (const Scalar& g : gs) {
        Polynomial qp = model::periodic_supercharge({g, Region::periodic(m, n)});
        Polynomial qf = model::free_supercharge({g, Region::free(m, n)});
        if (!car::multiply(qp, qp).is_zero()) {
          return {false, fmt("periodic supercharge on [-%d+1,%d] fails Q^2 = 0",
                             m, n)};
        }
        if (!car::multiply(qf, qf).is_zero()) {
          return {false,
                  fmt("free supercharge on [-%d+1,%d] fails Q^2 = 0", m, n)};
        }
        checked += 2;
      }
    }
  }
  return {true, fmt("supercharge squares are the zero polynomial: %d cases "
                    "(16 regions x 7 couplings, periodic and free)",
                    checked)};
}

// ---------------------------------------------------------------- 2 ----
// The witness identity delta_g(O_k) = g * 1 holds exactly and does not
// depend on the truncation used to realize the superderivation.
Outcome witness_identity() {
  const std::vector<Scalar> gs = {Scalar(1), Scalar(-1), ratio(2, 3),
                                  Scalar(7)};
  int checked = 0;
  for (int k : {0, 1, 2, 3}) {
    for (const Scalar& g : gs) {
      Polynomial ok = model::witness_operator(g, k);
      Region r0 = model::margin_region(car::support(ok));
      Polynomial base =
          car::graded_commutator(model::periodic_supercharge({g, r0}), ok);
      if (!(base - Polynomial::identity(g)).is_zero()) {
        return {false, fmt("delta_g(O_%d) differs from g at the base region",
                           k)};
      }
      ++checked;
      // the same image from every faithful truncation
      std::vector<Polynomial> variants;
      for (int extra : {0, 2, 4}) {
        variants.push_back(car::graded_commutator(
            model::free_supercharge(
                {g, Region::free(r0.m() + extra, r0.n() + extra)}),
            ok));
        if (extra > 0) {
          variants.push_back(car::graded_commutator(
              model::periodic_supercharge(
                  {g, Region::periodic(r0.m() + extra, r0.n() + extra)}),
              ok));
        }
      }
      for (const Polynomial& v : variants) {
        if (!(v - base).is_zero()) {
          return {false,
                  fmt("delta_g(O_%d) depends on the supercharge truncation",
                      k)};
        }
        ++checked;
      }
    }
  }
  return {true,
          fmt("delta_g(O_k) - g*1 is the zero polynomial for k = 0..3 and "
              "4 couplings, identical across free/periodic truncations and "
              "+2/+4 region growth (%d checks)",
              checked)};
}

// ---------------------------------------------------------------- 3 ----
// The SUSY Laplacian equals the plain commutator with a wide-enough local
// Hamiltonian on every monomial of width <= 6.
Outcome susy_relation() {
  long mismatches = 0;
  long total = 0;
  const int width = 6;
  long combos = 1;
  for (int i = 0; i < width; ++i) combos *= 4;

  for (const Scalar& g : {Scalar(0), Scalar(1)}) {
    std::map<std::pair<int, int>, Polynomial> hams;
    auto hamiltonian_for = [&](const Interval& sup) -> const Polynomial& {
      Region r = model::hamiltonian_region(sup);
      auto key = std::make_pair(r.m(), r.n());
      auto it = hams.find(key);
      if (it == hams.end()) {
        it = hams.emplace(key, model::local_hamiltonian(
                                   model::supercharge({g, r})))
                 .first;
      }
      return it->second;
    };

    for (long code = 0; code < combos; ++code) {
      std::vector<car::Site> cre, ann;
      long rest = code;
      for (int s = 1; s <= width; ++s) {
        int digit = rest % 4;
        rest /= 4;
        if (digit == 1) ann.push_back(s);
        if (digit == 2) cre.push_back(s);
        if (digit == 3) {
          cre.push_back(s);
          ann.push_back(s);
        }
      }
      Polynomial a = Polynomial::term(car::Monomial(cre, ann));
      Polynomial lap = model::susy_laplacian(g, a);
      Polynomial comm = car::commutator(hamiltonian_for(car::support(a)), a);
      if (!(lap == comm)) ++mismatches;
      ++total;
    }
  }
  if (mismatches > 0) {
    return {false, fmt("SUSY relation d_g(A) = [H_loc, A] fails on %ld of "
                       "%ld monomials",
                       mismatches, total)};
  }
  return {true, fmt("d_g(A) = [H_loc, A] exactly on all %ld monomials of "
                    "width <= 6 at g in {0, 1}",
                    total)};
}

// A random polynomial with exact rational coefficients, supported inside
// [lo, hi].  Never returns the zero polynomial.
Polynomial random_poly(std::mt19937& rng, int lo, int hi) {
  std::uniform_int_distribution<int> nterms(1, 3);
  std::uniform_int_distribution<int> ngens(1, 4);
  std::uniform_int_distribution<int> site(lo, hi);
  std::uniform_int_distribution<int> mag(1, 3);
  std::uniform_int_distribution<int> den(1, 4);
  std::uniform_int_distribution<int> coin(0, 1);
  for (;;) {
    Polynomial p;
    int t = nterms(rng);
    for (int i = 0; i < t; ++i) {
      long long num = mag(rng) * (coin(rng) ? 1 : -1);
      Polynomial term = Polynomial::identity(ratio(num, den(rng)));
      int gens = ngens(rng);
      for (int j = 0; j < gens; ++j) {
        int s = site(rng);
        term = car::multiply(
            term, coin(rng) ? car::creator(s) : car::annihilator(s));
      }
      p += term;
    }
    if (!p.is_zero()) return p;
  }
}

// ---------------------------------------------------------------- 4 ----
// The Fock representation is an algebra homomorphism.
Outcome representation_homomorphism() {
  const fock::Window w = fock::Window::interval(1, 8);
  std::mt19937 rng(20260822);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    Polynomial a = random_poly(rng, 1, 8);
    Polynomial b = random_poly(rng, 1, 8);
    fock::SparseMatrix ra = fock::represent(a, w).matrix;
    fock::SparseMatrix rb = fock::represent(b, w).matrix;
    fock::SparseMatrix rab = fock::represent(car::multiply(a, b), w).matrix;
    fock::SparseMatrix prod = ra * rb;
    double err = (rab - prod).norm();
    if (err > worst) worst = err;
  }
  if (worst > 1e-12) {
    return {false, fmt("represent(ab) vs represent(a)*represent(b) differ "
                       "by %.3e > 1e-12",
                       worst)};
  }
  return {true, fmt("represent(ab) = represent(a)*represent(b) within "
                    "%.1e <= 1e-12 on 100 random pairs in an 8-site window",
                    worst)};
}

// ---------------------------------------------------------------- 5 ----
// SUSY is broken at finite volume for g != 0 (strictly positive ground
// energy) and unbroken at g = 0 (annihilated zero modes).  Energies and
// zero-mode counts are pinned regression values from an independent dense
// diagonalization.
Outcome finite_volume_breaking() {
  struct Volume {
    int m, n, zero_modes;
  };
  const std::vector<Volume> volumes = {{4, 4, 116}, {4, 6, 364}, {6, 6, 1172}};
  // independently recomputed ground energies, keyed by (L, coupling label)
  const std::map<std::pair<int, std::string>, double> frozen = {
      {{8, "1/2"}, 0.103700631477289},  {{8, "1"}, 1.154194087420558},
      {{10, "1"}, 1.407675524898614},   {{12, "1/2"}, 0.153103832432389},
      {{12, "1"}, 1.661259576966629},
  };
  const std::vector<std::pair<std::string, Scalar>> gs = {
      {"1/10", ratio(1, 10)}, {"1/2", ratio(1, 2)}, {"1", Scalar(1)}};
  spectra::SolveOptions opts;

  double min_positive = 1e300;
  for (const Volume& v : volumes) {
    const Region region = Region::periodic(v.m, v.n);
    const int sites = region.num_sites();
    for (const auto& [label, g] : gs) {
      spectra::SpectrumResult res = spectra::ground_state(g, region, opts);
      if (!(res.ground_energy > 1e-6)) {
        return {false, fmt("E0 = %.3e fails E0 > 1e-6 at L = %d, g = %s",
                           res.ground_energy, sites, label.c_str())};
      }
      if (res.ground_energy < min_positive) min_positive = res.ground_energy;
      auto it = frozen.find({sites, label});
      if (it != frozen.end() &&
          std::abs(res.ground_energy - it->second) > 1e-8) {
        return {false,
                fmt("E0 = %.15g drifted from the pinned %.15g at L = %d, "
                    "g = %s",
                    res.ground_energy, it->second, sites, label.c_str())};
      }
    }
    // g = 0: supersymmetric ground states, annihilated by Q and Q*
    spectra::SpectrumResult res = spectra::ground_state(Scalar(0), region, opts);
    if (std::abs(res.ground_energy) > 1e-10) {
      return {false, fmt("|E0| = %.3e exceeds 1e-10 at g = 0, L = %d",
                         std::abs(res.ground_energy), sites)};
    }
    if (res.degeneracy != v.zero_modes) {
      return {false, fmt("g = 0 zero-mode count %d != pinned %d at L = %d",
                         res.degeneracy, v.zero_modes, sites)};
    }
    if (!res.ground_vector) {
      return {false, fmt("no ground vector returned at g = 0, L = %d", sites)};
    }
    Polynomial q = model::periodic_supercharge({Scalar(0), region});
    const fock::FockVector& gv = *res.ground_vector;
    fock::SparseMatrix mq = fock::represent(q, gv.window).matrix;
    double qn = (mq * gv.amplitudes).norm();
    double qdn = (mq.adjoint() * gv.amplitudes).norm();
    if (qn > 1e-5 || qdn > 1e-5) {
      return {false, fmt("g = 0 ground vector is not a zero mode at L = %d "
                         "(||Qv|| = %.2e, ||Q*v|| = %.2e)",
                         sites, qn, qdn)};
    }
  }
  return {true, fmt("E0 > 1e-6 for g in {1/10, 1/2, 1} at L in {8, 10, 12} "
                    "(smallest %.6g, energies match pinned values to 1e-8); "
                    "g = 0 gives E0 = 0 within 1e-10 with annihilated zero "
                    "modes of pinned multiplicity",
                    min_positive)};
}

// ---------------------------------------------------------------- 6 ----
// The averaged witness norm decays at least as fast as C / sqrt(n).
Outcome norm_decay() {
  const double norm_o1 = 3.214319743377536;  // pinned ||O_1|| at g = 1
  const double c2 = 10.0 * norm_o1 * norm_o1;
  const double c = std::sqrt(c2);
  const std::map<int, double> frozen = {{1, 3.214319743377536},
                                        {2, 1.881658399644775},
                                        {3, 1.470484101633826},
                                        {4, 1.231799990379213}};
  const Scalar g(1);
  double min_slack = 1e300;
  for (int n = 1; n <= 5; ++n) {
    Polynomial on = model::averaged_witness(g, n);
    Interval sup = car::support(on);
    fock::Window w = fock::Window::interval(sup.left, sup.right);
    fock::NormResult nr = fock::operator_norm(fock::represent(on, w));
    if (!nr.converged) {
      return {false, fmt("operator norm iteration for o(%d) did not "
                         "converge",
                         n)};
    }
    auto it = frozen.find(n);
    if (it != frozen.end() && std::abs(nr.value - it->second) > 1e-8) {
      return {false, fmt("||o(%d)|| = %.15g drifted from the pinned %.15g",
                         n, nr.value, it->second)};
    }
    double slack = c / std::sqrt(double(n)) - nr.value;
    if (slack < min_slack) min_slack = slack;
    if (slack < 1e-10) {
      return {false, fmt("||o(%d)|| = %.15g violates C/sqrt(n) = %.15g "
                         "(slack %.3e < 1e-10)",
                         n, nr.value, c / std::sqrt(double(n)), slack)};
    }
  }
  return {true, fmt("||o(n)|| <= C/sqrt(n) for n = 1..5 with C^2 = "
                    "10*||O_1||^2 = %.17g; min slack %.6g >= 1e-10",
                    c2, min_slack)};
}

// ---------------------------------------------------------------- 7 ----
// The finite-volume bound chain behind the breaking argument.
Outcome bound_chain() {
  double max_identity_err = 0.0;
  double min_pairing = 1e300;
  double min_lower = 1e300;
  for (const Scalar& g : {ratio(1, 2), Scalar(1)}) {
    for (int n = 1; n <= 3; ++n) {
      spectra::BoundReport r = spectra::susy_bound_check(g, n);
      if (!r.witness_norm_converged) {
        return {false, fmt("witness norm for n = %d did not converge", n)};
      }
      if (!r.identity_ok) {
        return {false,
                fmt("||Q*v||^2 + ||Qv||^2 misses E0 by %.3e > 1e-8 at "
                    "g = %.3g, n = %d",
                    r.identity_error, r.g_value, n)};
      }
      if (!r.inequality_ok) {
        return {false, fmt("pairing bound |g| <= (a+b)||o(n)|| fails by "
                           "%.3e at g = %.3g, n = %d",
                           -r.pairing_slack, r.g_value, n)};
      }
      if (!r.lower_bound_ok) {
        return {false, fmt("E0 >= g^2 / (2||o(n)||^2) fails by %.3e at "
                           "g = %.3g, n = %d",
                           -r.bound_slack, r.g_value, n)};
      }
      if (r.identity_error > max_identity_err)
        max_identity_err = r.identity_error;
      if (r.pairing_slack < min_pairing) min_pairing = r.pairing_slack;
      if (r.bound_slack < min_lower) min_lower = r.bound_slack;
    }
  }
  return {true, fmt("ground-vector chain holds for g in {1/2, 1}, n = 1..3: "
                    "||Q*v||^2 + ||Qv||^2 = E0 to %.1e <= 1e-8, pairing "
                    "slack >= %.4g, lower-bound slack >= %.4g",
                    max_identity_err, min_pairing, min_lower)};
}

// ---------------------------------------------------------------- 8 ----
// The infinite-volume statements rest on identities that are exact at
// finite volume and independent of the truncation; the quantitative decay
// and bound are criteria 6 and 7.  Here the engine is checked directly:
// delta_g(o(n)) = g * 1, so every vector state assigns the averaged
// witness's image expectation exactly g — no state is SUSY-invariant.
Outcome state_independence() {
  const std::vector<Scalar> gs = {Scalar(1), Scalar(-1), ratio(2, 3),
                                  Scalar(7)};
  int checked = 0;
  for (int n = 1; n <= 3; ++n) {
    for (const Scalar& g : gs) {
      Polynomial image = model::superderivation(g, model::averaged_witness(g, n));
      if (!(image - Polynomial::identity(g)).is_zero()) {
        return {false, fmt("delta_g(o(%d)) differs from g*1", n)};
      }
      ++checked;
    }
  }
  return {true, fmt("delta_g(o(n)) = g*1 exactly for n = 1..3 and 4 "
                    "couplings (%d checks) — the state-independent engine "
                    "of the large-volume claims, quantified by criteria 6 "
                    "and 7",
                    checked)};
}

// ---------------------------------------------------------------- 9 ----
// The superderivation commutes with the two-site lattice shift.
Outcome translation_covariance() {
  const std::vector<Scalar> gs = {Scalar(1), Scalar(-1), ratio(2, 3),
                                  Scalar(7), ratio(1, 2)};
  std::mt19937 rng(1729);
  for (int trial = 0; trial < 50; ++trial) {
    int lo = -3 + trial % 7;
    Polynomial a = random_poly(rng, lo, lo + 5);
    const Scalar& g = gs[trial % gs.size()];
    Polynomial lhs = model::superderivation(g, car::shift(a, 2));
    Polynomial rhs = car::shift(model::superderivation(g, a), 2);
    if (!(lhs - rhs).is_zero()) {
      return {false, fmt("delta_g(sigma_2 A) != sigma_2(delta_g A) on "
                         "trial %d",
                         trial)};
    }
  }
  return {true, "delta_g commutes with the two-site shift exactly on 50 "
                "random local polynomials of width <= 6"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const std::vector<Criterion> criteria = {
      {"nilpotency", nilpotency},
      {"witness identity", witness_identity},
      {"SUSY relation", susy_relation},
      {"representation", representation_homomorphism},
      {"SUSY breaking", finite_volume_breaking},
      {"norm decay", norm_decay},
      {"bound chain", bound_chain},
      {"state independence", state_independence},
      {"translation covariance", translation_covariance},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].run();
    } catch (const std::exception& e) {
      out = {false, fmt("threw %s", e.what())};
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("[%zu/9] %s  %s: %s (%.2f s)\n", i + 1,
                out.pass ? "PASS" : "FAIL", criteria[i].name,
                out.text.c_str(), secs);
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  if (failures > 0) {
    std::printf("acceptance: %d of 9 criteria FAILED\n", failures);
    return 1;
  }
  std::printf("acceptance: 9/9 criteria passed\n");
  return 0;
}
