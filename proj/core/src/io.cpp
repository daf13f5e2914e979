#include "mipm/io.hpp"

#include <cstdio>
#include <ostream>
#include <set>

namespace mipm {

namespace {

void reject_unknown_fields(const Json& j, const std::set<std::string>& allowed,
                           const std::string& where) {
  if (!j.is_object()) throw SpecError(where + ": expected an object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key))
      throw SpecError(where + ": unknown field '" + key + "'");
}

double number_field(const Json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw SpecError("field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

Json manifold_to_json(const Manifold& m) {
  switch (m.kind()) {
    case ManifoldKind::Euclidean:
      return Json{{"kind", "euclidean"}, {"n", m.n()}};
    case ManifoldKind::Hyperboloid:
      return Json{{"kind", "hyperboloid"}, {"n", m.n()}, {"kappa", m.kappa()}};
    case ManifoldKind::PdHermitian:
      return Json{{"kind", "pd_hermitian"}, {"n", m.n()}};
    case ManifoldKind::Product: {
      Json factors = Json::array();
      for (const auto& f : m.factors()) factors.push_back(manifold_to_json(f));
      return Json{{"kind", "product"}, {"factors", factors}};
    }
  }
  throw std::logic_error("manifold_to_json: unreachable");
}

Manifold manifold_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw SpecError("manifold: expected an object with 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "euclidean") {
    reject_unknown_fields(j, {"kind", "n"}, "manifold");
    return Manifold::euclidean(j.at("n").get<int>());
  }
  if (kind == "hyperboloid") {
    reject_unknown_fields(j, {"kind", "n", "kappa"}, "manifold");
    return Manifold::hyperboloid(j.at("n").get<int>(),
                                 number_field(j, "kappa", 1.0));
  }
  if (kind == "pd_hermitian") {
    reject_unknown_fields(j, {"kind", "n"}, "manifold");
    return Manifold::pd_hermitian(j.at("n").get<int>());
  }
  if (kind == "product") {
    reject_unknown_fields(j, {"kind", "factors"}, "manifold");
    std::vector<Manifold> factors;
    for (const auto& f : j.at("factors")) factors.push_back(manifold_from_json(f));
    return Manifold::product(std::move(factors));
  }
  throw SpecError("manifold: unknown kind '" + kind + "'");
}

Json point_to_json(const Point& p) {
  switch (p.manifold.kind()) {
    case ManifoldKind::Euclidean:
    case ManifoldKind::Hyperboloid: {
      Json arr = Json::array();
      for (int i = 0; i < p.coords.size(); ++i) arr.push_back(p.coords(i));
      return arr;
    }
    case ManifoldKind::PdHermitian: {
      const int n = p.manifold.n();
      const ComplexMatrix m = pd_to_matrix(p.coords, n);
      Json rows = Json::array();
      for (int i = 0; i < n; ++i) {
        Json row = Json::array();
        for (int j = 0; j < n; ++j)
          row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(row);
      }
      return rows;
    }
    case ManifoldKind::Product: {
      Json arr = Json::array();
      for (size_t i = 0; i < p.manifold.factors().size(); ++i)
        arr.push_back(point_to_json(p.factor(static_cast<int>(i))));
      return arr;
    }
  }
  throw std::logic_error("point_to_json: unreachable");
}

Point point_from_json(const Manifold& m, const Json& j) {
  try {
    switch (m.kind()) {
      case ManifoldKind::Euclidean:
      case ManifoldKind::Hyperboloid: {
        if (!j.is_array() || static_cast<int>(j.size()) != m.coord_size())
          throw SpecError("point: wrong coordinate count");
        Vector c(m.coord_size());
        for (int i = 0; i < m.coord_size(); ++i)
          c(i) = j.at(static_cast<size_t>(i)).get<double>();
        return Point(m, c);
      }
      case ManifoldKind::PdHermitian: {
        const int n = m.n();
        if (!j.is_array() || static_cast<int>(j.size()) != n)
          throw SpecError("pd point: expected " + std::to_string(n) + " rows");
        ComplexMatrix mat(n, n);
        for (int i = 0; i < n; ++i) {
          const auto& row = j.at(static_cast<size_t>(i));
          if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw SpecError("pd point: ragged rows");
          for (int k = 0; k < n; ++k) {
            const auto& cell = row.at(static_cast<size_t>(k));
            if (!cell.is_array() || cell.size() != 2)
              throw SpecError("pd point: each entry must be [re, im]");
            mat(i, k) = std::complex<double>(cell.at(0).get<double>(),
                                             cell.at(1).get<double>());
          }
        }
        return Point(m, pd_from_matrix(mat));
      }
      case ManifoldKind::Product: {
        if (!j.is_array() || j.size() != m.factors().size())
          throw SpecError("product point: wrong factor count");
        Vector c(m.coord_size());
        for (size_t i = 0; i < m.factors().size(); ++i) {
          const int k = static_cast<int>(i);
          const Point f = point_from_json(m.factors()[i], j.at(i));
          c.segment(m.factor_offset(k), f.coords.size()) = f.coords;
        }
        return Point(m, c);
      }
    }
  } catch (const InvalidPoint& e) {
    throw SpecError(std::string("point: ") + e.what());
  }
  throw std::logic_error("point_from_json: unreachable");
}

Json tensor_to_json(const KempfNessSpec& spec) {
  Json dims = Json::array();
  for (int d : spec.dims) dims.push_back(d);
  Json values = Json::array();
  for (Eigen::Index i = 0; i < spec.v.size(); ++i)
    values.push_back(Json::array({spec.v(i).real(), spec.v(i).imag()}));
  Json j{{"dims", dims}, {"values", values}};
  if (spec.weight_norm > 0) j["weight_norm"] = spec.weight_norm;
  return j;
}

KempfNessSpec tensor_from_json(const Json& j) {
  reject_unknown_fields(j, {"dims", "values", "weight_norm"}, "tensor");
  KempfNessSpec spec;
  if (!j.contains("dims") || !j.contains("values"))
    throw SpecError("tensor: needs 'dims' and 'values'");
  for (const auto& d : j.at("dims")) spec.dims.push_back(d.get<int>());
  const auto& values = j.at("values");
  spec.v.resize(static_cast<Eigen::Index>(values.size()));
  for (size_t i = 0; i < values.size(); ++i) {
    const auto& cell = values.at(i);
    if (!cell.is_array() || cell.size() != 2)
      throw SpecError("tensor: values must be [re, im] pairs");
    spec.v(static_cast<Eigen::Index>(i)) = std::complex<double>(
        cell.at(0).get<double>(), cell.at(1).get<double>());
  }
  spec.weight_norm = number_field(j, "weight_norm", 0.0);
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw SpecError(std::string("tensor: ") + e.what());
  }
  return spec;
}

SolveOptions ProblemSpec::options() const {
  SolveOptions o;
  o.adaptive = adaptive;
  o.max_iters = max_iters;
  o.damped_max_iters = damped_max_iters;
  return o;
}

ProblemSpec problem_spec_from_json(const Json& j) {
  reject_unknown_fields(j,
                        {"problem", "manifold", "points", "tensor", "epsilon",
                         "S0", "R0", "seed", "adaptive", "traceless",
                         "max_iters", "damped_max_iters"},
                        "spec");
  ProblemSpec spec;
  if (!j.contains("problem")) throw SpecError("spec: missing 'problem'");
  spec.problem = j.at("problem").get<std::string>();
  const std::set<std::string> known{"meb", "median", "barycenter", "scaling"};
  if (!known.count(spec.problem))
    throw SpecError("spec: unknown problem '" + spec.problem + "'");

  spec.epsilon = number_field(j, "epsilon", 1e-4);
  if (!(spec.epsilon > 0)) throw SpecError("spec: epsilon must be > 0");
  if (j.contains("S0")) spec.S0 = j.at("S0").get<double>();
  if (j.contains("R0")) spec.R0 = j.at("R0").get<double>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("adaptive")) spec.adaptive = j.at("adaptive").get<bool>();
  if (j.contains("max_iters")) spec.max_iters = j.at("max_iters").get<long>();
  if (j.contains("damped_max_iters"))
    spec.damped_max_iters = j.at("damped_max_iters").get<long>();

  if (spec.problem == "scaling") {
    if (!j.contains("tensor")) throw SpecError("scaling spec: missing 'tensor'");
    spec.tensor = tensor_from_json(j.at("tensor"));
    if (j.contains("traceless"))
      spec.tensor->traceless = j.at("traceless").get<bool>();
  } else {
    if (!j.contains("manifold")) throw SpecError("spec: missing 'manifold'");
    spec.manifold = manifold_from_json(j.at("manifold"));
    if (!j.contains("points")) throw SpecError("spec: missing 'points'");
    for (const auto& p : j.at("points"))
      spec.points.push_back(point_from_json(*spec.manifold, p));
  }
  return spec;
}

Json problem_spec_to_json(const ProblemSpec& spec) {
  Json j{{"problem", spec.problem}, {"epsilon", spec.epsilon}};
  if (spec.seed) j["seed"] = spec.seed;
  if (spec.adaptive) j["adaptive"] = true;
  if (spec.S0) j["S0"] = *spec.S0;
  if (spec.R0) j["R0"] = *spec.R0;
  if (spec.tensor) {
    j["tensor"] = tensor_to_json(*spec.tensor);
    if (spec.tensor->traceless) j["traceless"] = true;
  }
  if (spec.manifold) {
    j["manifold"] = manifold_to_json(*spec.manifold);
    Json points = Json::array();
    for (const auto& p : spec.points) points.push_back(point_to_json(p));
    j["points"] = points;
  }
  return j;
}

void write_trace_csv(std::ostream& os, const SolveTrace& trace) {
  os << "ell,t,lambda,objective,gap_bound\n";
  char buf[256];
  for (const auto& row : trace.rows) {
    std::snprintf(buf, sizeof(buf), "%ld,%.17g,%.17g,%.17g,%.17g\n", row.ell,
                  row.t, row.lambda, row.objective, row.gap_bound);
    os << buf;
  }
}

}  // namespace mipm
