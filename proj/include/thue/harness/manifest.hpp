#pragma once

#include <optional>
#include <string>
#include <vector>

#include "thue/harness/harness.hpp"

namespace thue::harness {

struct AlphaSweep {
  std::size_t count = 200;
  long height = 100;  // entries bounded by exp(h(alpha)) = height
  std::uint64_t seed = 1;
};

struct PointSpec {
  QPoly minpoly;
  int root = 0;
  AlgebraicNumber point() const;
};

struct ProblemManifest {
  int schema = 1;
  std::string family;
  std::string coordinate = "t";
  std::vector<RationalFunction> functions;
  std::optional<std::vector<Rational>> alpha;
  std::optional<AlphaSweep> sweep;
  std::vector<RationalFunction> theta;
  Range n;
  std::optional<HeightBound> H;
  std::optional<int> degree;
  std::optional<Rational> q0;
  std::vector<PointSpec> points;
  // Subgroup data for the reduction pipeline.
  std::vector<std::vector<RationalFunction>> generators;
  std::vector<reduction::TorsionVector> torsion;
  std::vector<Integer> lambda;
  reduction::TorsionVector omega;
  // Flags.
  bool height_cap = false;
  long K = 10;
  long dirichlet_q = 2;
  long box = 5;

  std::size_t r() const { return functions.size(); }
  // r >= 2, H > 0 and consistent lengths; throws ContractError naming the field.
  void validate() const;
};

// Parses JSON text; errors name the line and column or the offending field.
ProblemManifest parse_manifest(const std::string& text, const std::string& source = "manifest");
ProblemManifest load_manifest(const std::string& path);

// Parses a rational function in the named coordinate.
RationalFunction parse_function(const std::string& text, const std::string& coordinate = "t");

}  // namespace thue::harness
