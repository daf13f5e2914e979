#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "mipm/kempf_ness.hpp"
#include "mipm/path_following.hpp"
#include "mipm/solvers.hpp"

namespace mipm {

using Json = nlohmann::json;

/// Input file failed schema validation (unknown field, wrong shape, bad
/// value); maps to CLI exit code 1.
struct SpecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Json manifold_to_json(const Manifold& m);
Manifold manifold_from_json(const Json& j);

/// Point payloads: Euclidean/hyperboloid as coordinate arrays, PD matrices
/// as nested rows of [re, im] pairs, products as arrays of factor payloads.
Json point_to_json(const Point& p);
Point point_from_json(const Manifold& m, const Json& j);

Json tensor_to_json(const KempfNessSpec& spec);
KempfNessSpec tensor_from_json(const Json& j);

/// Batch problem description consumed by `solve` (and produced by `gen`).
struct ProblemSpec {
  std::string problem;  // meb | median | barycenter | scaling
  std::optional<Manifold> manifold;
  std::vector<Point> points;
  std::optional<KempfNessSpec> tensor;
  double epsilon = 1e-4;
  std::optional<double> S0;
  std::optional<double> R0;
  std::uint64_t seed = 0;
  bool adaptive = false;
  long max_iters = 100000;
  long damped_max_iters = 100000;

  SolveOptions options() const;
};

ProblemSpec problem_spec_from_json(const Json& j);
Json problem_spec_to_json(const ProblemSpec& spec);

void write_trace_csv(std::ostream& os, const SolveTrace& trace);

}  // namespace mipm
