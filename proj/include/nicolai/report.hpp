#pragma once

#include "nicolai/spectra.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace nicolai::report {

/// One row of the result table.  Commands fill what they measure; unset
/// fields print as empty cells so every command shares one schema.
struct Record {
  std::string g;              // coupling in its parsed text form
  std::optional<int> length;  // window sites L
  std::string boundary;       // "periodic", "free", or empty
  std::optional<double> ground_energy;
  std::optional<double> energy_per_site;
  std::optional<int> degeneracy;
  std::optional<double> residual;
  std::string solver;
  std::optional<double> a;             // ||Q* ground||
  std::optional<double> b;             // ||Q ground||
  std::optional<double> witness_norm;  // ||o(n)||
};

/// Round-trip decimal form (%.17g), locale-independent; the one number
/// format used in CSV and plot files so reruns are byte-identical.
std::string format_double(double x);

std::string csv_header();
std::string csv_line(const Record& r);
void write_csv(const std::vector<Record>& rows, std::ostream& os);

/// (L, e) rows for external plotting.  Throws EmptyInput on no rows.
void write_density_plot(const spectra::DensityCurve& curve,
                        std::ostream& os);

struct NormPoint {
  int n = 0;
  double norm = 0.0;
};

/// (n, |o(n)|, sqrt(n)*|o(n)|) rows; the third column reads as a flat
/// line under the 1/sqrt(n) decay law.  Throws EmptyInput on no rows.
void write_norm_plot(const std::vector<NormPoint>& points, std::ostream& os);

}  // namespace nicolai::report
