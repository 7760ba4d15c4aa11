#include "nicolai/spectra.hpp"

#include "nicolai/errors.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <string>

namespace nicolai::spectra {

namespace {

using Cplx = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct SectorSolution {
  std::vector<double> low;  // ascending; converged states only
  Vector ground;            // sector coordinates; may be empty for dense
  std::string solver;
};

SectorSolution dense_solve(const fock::SparseMatrix& block,
                           bool with_vector) {
  DenseMatrix dense(block);
  SectorSolution out;
  out.solver = "dense";
  if (with_vector) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(dense);
    const auto& ev = solver.eigenvalues();
    out.low.assign(ev.data(), ev.data() + ev.size());
    out.ground = solver.eigenvectors().col(0);
  } else {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(dense,
                                                      Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    out.low.assign(ev.data(), ev.data() + ev.size());
  }
  return out;
}

// Block Krylov Rayleigh-Ritz with full reorthogonalization, block width
// two.  The projected matrix is assembled column by column from the stored
// images A*basis, so a deflated direction or a saturated subspace never
// corrupts it, and the residuals below are the true ones.  Deterministic
// for a fixed seed; converged once the lowest `ritz_count` Ritz pairs have
// residuals below tol * max(1, |theta|).
SectorSolution lanczos_solve(const fock::SparseMatrix& block,
                             const SolveOptions& opts, std::uint64_t seed) {
  constexpr int p = 2;  // block width
  const long dim = block.rows();
  const long want = std::max<long>(1, std::min<long>(opts.ritz_count, dim));

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto random_vector = [&] {
    Vector x(dim);
    for (long i = 0; i < dim; ++i) x(i) = Cplx{gauss(rng), gauss(rng)};
    return x;
  };

  long cap = std::min<long>(dim, 64);
  DenseMatrix basis(dim, cap);  // orthonormal columns 0..cols-1
  DenseMatrix image(dim, cap);  // block * basis, column for column
  DenseMatrix proj = DenseMatrix::Zero(cap, cap);
  long cols = 0;

  auto grow = [&](long need) {
    if (need <= cap) return;
    long newcap = std::min(dim, std::max(need, 2 * cap));
    basis.conservativeResize(Eigen::NoChange, newcap);
    image.conservativeResize(Eigen::NoChange, newcap);
    DenseMatrix wider = DenseMatrix::Zero(newcap, newcap);
    wider.topLeftCorner(cols, cols) = proj.topLeftCorner(cols, cols);
    proj = std::move(wider);
    cap = newcap;
  };

  // Appends v as a new basis column if two reorthogonalization passes
  // leave a genuinely fresh direction; also extends the projection.
  auto try_append = [&](Vector v) {
    const double before = v.norm();
    if (before == 0.0) return false;
    for (int pass = 0; pass < 2; ++pass) {
      if (cols > 0) {
        auto b = basis.leftCols(cols);
        v -= b * (b.adjoint() * v).eval();
      }
    }
    const double after = v.norm();
    if (after <= 1e-10 * std::max(1.0, before)) return false;
    grow(cols + 1);
    basis.col(cols) = v / after;
    image.col(cols) = block * basis.col(cols);
    Vector strip = basis.leftCols(cols + 1).adjoint() * image.col(cols);
    for (long i = 0; i < cols; ++i) {
      proj(i, cols) = strip(i);
      proj(cols, i) = std::conj(strip(i));
    }
    proj(cols, cols) = strip(cols).real();
    ++cols;
    return true;
  };

  while (cols < std::min<long>(p, dim)) try_append(random_vector());

  for (int step = 0; step < opts.max_lanczos_steps; ++step) {
    // extend the subspace with the images of the most recent block
    long fresh = 0;
    const long base = cols;
    for (long j = 0; j < std::min<long>(p, base) && cols < dim; ++j) {
      if (try_append(image.col(base - 1 - j))) ++fresh;
    }
    for (int attempt = 0; fresh == 0 && cols < dim && attempt < 8;
         ++attempt) {
      // numerically invariant subspace: bring in an unexplored direction
      if (try_append(random_vector())) ++fresh;
    }

    const bool full = cols >= dim;
    const bool stalled = fresh == 0 && !full;
    const bool last = step == opts.max_lanczos_steps - 1;
    if (!(full || stalled || last || step % 5 == 4)) continue;

    Eigen::SelfAdjointEigenSolver<DenseMatrix> small(
        proj.topLeftCorner(cols, cols));
    const auto& theta = small.eigenvalues();
    const long tracked = std::min(want, cols);
    bool all_ok = true;
    for (long k = 0; k < tracked && all_ok; ++k) {
      Vector y = small.eigenvectors().col(k);
      double res = (image.leftCols(cols) * y -
                    theta(k) * (basis.leftCols(cols) * y))
                       .norm();
      all_ok = res <= opts.lanczos_tol * std::max(1.0, std::abs(theta(k)));
    }
    if (all_ok || full || stalled) {
      SectorSolution out;
      out.solver = "lanczos";
      for (long k = 0; k < tracked; ++k) out.low.push_back(theta(k));
      out.ground = basis.leftCols(cols) * small.eigenvectors().col(0);
      out.ground.normalize();
      return out;
    }
  }
  throw SolverNoConvergence(
      "block Lanczos exhausted " + std::to_string(opts.max_lanczos_steps) +
      " steps on a sector of dimension " + std::to_string(dim));
}

double coupling_as_double(const Scalar& g) {
  Cplx z = g.to_complex();
  return g.is_real() ? z.real() : std::abs(z);
}

}  // namespace

std::vector<SectorBlock> sector_decompose(const fock::FockOperator& h) {
  const auto& m = h.matrix;
  const int sites = h.window.size();
  const std::size_t dim = h.window.dim();

  for (int k = 0; k < m.outerSize(); ++k) {
    for (fock::SparseMatrix::InnerIterator it(m, k); it; ++it) {
      int dn = std::popcount(std::uint64_t(it.row())) -
               std::popcount(std::uint64_t(it.col()));
      if (dn != 0 && std::abs(it.value()) > 1e-10)
        throw NotNumberConserving(
            "matrix couples different fermion numbers; entry (" +
            std::to_string(it.row()) + ", " + std::to_string(it.col()) +
            ") has magnitude " + std::to_string(std::abs(it.value())));
    }
  }

  std::vector<SectorBlock> blocks(sites + 1);
  std::vector<long> local(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    int n = std::popcount(std::uint64_t(s));
    local[s] = static_cast<long>(blocks[n].basis_states.size());
    blocks[n].fermion_number = n;
    blocks[n].basis_states.push_back(s);
  }

  std::vector<std::vector<Eigen::Triplet<Cplx>>> trips(sites + 1);
  for (int k = 0; k < m.outerSize(); ++k) {
    for (fock::SparseMatrix::InnerIterator it(m, k); it; ++it) {
      int n = std::popcount(std::uint64_t(it.col()));
      if (std::popcount(std::uint64_t(it.row())) != n) continue;
      trips[n].emplace_back(local[it.row()], local[it.col()], it.value());
    }
  }
  for (int n = 0; n <= sites; ++n) {
    long d = static_cast<long>(blocks[n].basis_states.size());
    blocks[n].matrix = fock::SparseMatrix(d, d);
    blocks[n].matrix.setFromTriplets(trips[n].begin(), trips[n].end());
    blocks[n].matrix.makeCompressed();
  }
  return blocks;
}

double degeneracy_tolerance(double ground_energy) {
  return std::max(1e-8 * std::max(1.0, std::abs(ground_energy)), 1e-10);
}

SpectrumResult ground_of(const fock::FockOperator& h,
                         const SolveOptions& opts) {
  std::vector<SectorBlock> blocks = sector_decompose(h);

  SpectrumResult result;
  std::vector<SectorSolution> solutions(blocks.size());
  std::vector<double> pool;
  for (std::size_t n = 0; n < blocks.size(); ++n) {
    const long dim = blocks[n].matrix.rows();
    if (dim <= std::max(opts.dense_threshold, 4)) {
      solutions[n] = dense_solve(blocks[n].matrix, false);
    } else {
      solutions[n] = lanczos_solve(blocks[n].matrix, opts,
                                   opts.seed + 0x9e3779b9ull * n);
    }
    result.sector_energies[int(n)] = solutions[n].low.front();
    pool.insert(pool.end(), solutions[n].low.begin(), solutions[n].low.end());
  }

  std::size_t ground_sector = 0;
  for (std::size_t n = 1; n < blocks.size(); ++n)
    if (solutions[n].low.front() < solutions[ground_sector].low.front())
      ground_sector = n;

  result.ground_sector = static_cast<int>(ground_sector);
  result.ground_energy = solutions[ground_sector].low.front();
  result.degeneracy_tol = degeneracy_tolerance(result.ground_energy);
  result.degeneracy = static_cast<int>(std::count_if(
      pool.begin(), pool.end(), [&](double e) {
        return e <= result.ground_energy + result.degeneracy_tol;
      }));
  result.solver = solutions[ground_sector].solver;

  Vector v = solutions[ground_sector].ground;
  if (v.size() == 0)  // dense sectors skip vectors on the first pass
    v = dense_solve(blocks[ground_sector].matrix, true).ground;
  result.residual =
      (blocks[ground_sector].matrix * v - result.ground_energy * v).norm();

  Vector full = Vector::Zero(static_cast<long>(h.window.dim()));
  const auto& states = blocks[ground_sector].basis_states;
  for (std::size_t i = 0; i < states.size(); ++i)
    full(static_cast<long>(states[i])) = v(static_cast<long>(i));
  result.ground_vector.emplace(fock::FockVector{h.window, std::move(full)});
  return result;
}

RepresentedModel represent_model(const Scalar& g, const model::Region& region,
                                 int window_cap) {
  car::Polynomial q = model::supercharge({g, region});
  car::Polynomial h = model::local_hamiltonian(q);
  fock::Window window = fock::Window::of_region(region, window_cap);
  return {window, fock::represent(q, window), fock::represent(h, window)};
}

SpectrumResult ground_state(const Scalar& g, const model::Region& region,
                            const SolveOptions& opts) {
  RepresentedModel rm = represent_model(g, region, opts.window_cap);
  return ground_of(rm.hamiltonian, opts);
}

DensityCurve energy_density_curve(const Scalar& g,
                                  const std::vector<int>& lengths,
                                  model::Boundary boundary,
                                  const SolveOptions& opts) {
  if (lengths.empty()) throw EmptyInput("no chain lengths given");
  DensityCurve curve;
  for (int length : lengths) {
    if (length < 4 || length % 2 != 0)
      throw BadRegionParity("chain length must be even and at least 4, got " +
                            std::to_string(length));
    const int m = 2 * (length / 4);
    const int n = length - m;
    model::Region region = boundary == model::Boundary::periodic
                               ? model::Region::periodic(m, n)
                               : model::Region::free(m, n);
    SpectrumResult res = ground_state(g, region, opts);
    DensityRow row;
    row.g = coupling_as_double(g);
    row.length = length;
    row.boundary = boundary;
    row.ground_energy = res.ground_energy;
    row.energy_per_site = res.ground_energy / length;
    row.degeneracy = res.degeneracy;
    row.residual = res.residual;
    row.solver = res.solver;
    curve.rows.push_back(std::move(row));
  }

  // least-squares fit of e against 1/L, a finite-size diagnostic
  const std::size_t count = curve.rows.size();
  if (count == 1) {
    curve.fit_intercept = curve.rows.front().energy_per_site;
    curve.fit_slope = 0.0;
  } else {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const DensityRow& r : curve.rows) {
      double x = 1.0 / r.length;
      sx += x;
      sy += r.energy_per_site;
      sxx += x * x;
      sxy += x * r.energy_per_site;
    }
    double denom = count * sxx - sx * sx;
    curve.fit_slope = (count * sxy - sx * sy) / denom;
    curve.fit_intercept = (sy - curve.fit_slope * sx) / count;
  }
  return curve;
}

BoundReport susy_bound_check(const Scalar& g, int n,
                             const SolveOptions& opts) {
  if (g.is_zero())
    throw ZeroCoupling("the bound chain needs a nonzero coupling");
  if (n < 1) throw Error("the averaged witness needs n >= 1");

  car::Polynomial o = model::averaged_witness(g, n);
  model::Region region = model::margin_region(car::support(o));
  RepresentedModel rm = represent_model(g, region, opts.window_cap);
  SpectrumResult res = ground_of(rm.hamiltonian, opts);

  const Vector& vac = res.ground_vector->amplitudes;
  BoundReport report;
  report.n = n;
  report.g_value = coupling_as_double(g);
  report.window_sites = rm.window.size();
  report.ground_energy = res.ground_energy;
  report.a = (fock::SparseMatrix(rm.supercharge.matrix.adjoint()) * vac).norm();
  report.b = (rm.supercharge.matrix * vac).norm();

  fock::Window tight = fock::Window::interval(-1, 2 * n + 1, opts.window_cap);
  fock::NormResult norm = fock::operator_norm(
      fock::represent(o, tight), fock::NormMethod::automatic, 1e-10,
      opts.seed);
  report.witness_norm = norm.value;
  report.witness_norm_converged = norm.converged;

  const double e0 = report.ground_energy;
  const double abs_g = std::abs(g.to_complex());
  report.identity_error = std::abs(report.a * report.a +
                                   report.b * report.b - e0);
  report.pairing_slack = (report.a + report.b) * report.witness_norm - abs_g;
  report.bound_slack =
      e0 - abs_g * abs_g / (2 * report.witness_norm * report.witness_norm);
  report.identity_ok = report.identity_error <= 1e-8 * std::max(1.0, e0);
  report.inequality_ok = report.pairing_slack >= -1e-10;
  report.lower_bound_ok = report.bound_slack >= -1e-10;
  return report;
}

std::map<int, std::vector<double>> sector_eigenvalues(
    const fock::FockOperator& h) {
  std::map<int, std::vector<double>> out;
  for (const SectorBlock& block : sector_decompose(h)) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(
        DenseMatrix(block.matrix), Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    out[block.fermion_number].assign(ev.data(), ev.data() + ev.size());
  }
  return out;
}

std::vector<double> all_eigenvalues(const fock::FockOperator& h) {
  std::vector<double> out;
  for (const auto& [n, evs] : sector_eigenvalues(h))
    out.insert(out.end(), evs.begin(), evs.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nicolai::spectra
