#include "nicolai/report.hpp"

#include "nicolai/errors.hpp"

#include <cmath>
#include <cstdio>

namespace nicolai::report {

namespace {

std::string opt_double(const std::optional<double>& x) {
  return x ? format_double(*x) : std::string{};
}

std::string opt_int(const std::optional<int>& x) {
  return x ? std::to_string(*x) : std::string{};
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_header() {
  return "g,L,boundary,E0,e,degeneracy,residual,solver,a,b,witness_norm";
}

std::string csv_line(const Record& r) {
  std::string out;
  out += r.g;
  out += ',';
  out += opt_int(r.length);
  out += ',';
  out += r.boundary;
  out += ',';
  out += opt_double(r.ground_energy);
  out += ',';
  out += opt_double(r.energy_per_site);
  out += ',';
  out += opt_int(r.degeneracy);
  out += ',';
  out += opt_double(r.residual);
  out += ',';
  out += r.solver;
  out += ',';
  out += opt_double(r.a);
  out += ',';
  out += opt_double(r.b);
  out += ',';
  out += opt_double(r.witness_norm);
  return out;
}

void write_csv(const std::vector<Record>& rows, std::ostream& os) {
  os << csv_header() << '\n';
  for (const Record& r : rows) os << csv_line(r) << '\n';
}

void write_density_plot(const spectra::DensityCurve& curve,
                        std::ostream& os) {
  if (curve.rows.empty()) throw EmptyInput("density curve has no rows");
  os << "# L  e\n";
  for (const auto& row : curve.rows) {
    os << row.length << ' ' << format_double(row.energy_per_site) << '\n';
  }
}

void write_norm_plot(const std::vector<NormPoint>& points,
                     std::ostream& os) {
  if (points.empty()) throw EmptyInput("norm table has no rows");
  os << "# n  norm  sqrt_n_norm\n";
  for (const auto& pt : points) {
    os << pt.n << ' ' << format_double(pt.norm) << ' '
       << format_double(std::sqrt(double(pt.n)) * pt.norm) << '\n';
  }
}

}  // namespace nicolai::report
