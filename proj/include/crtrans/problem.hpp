#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "crtrans/construct.hpp"
#include "crtrans/error.hpp"
#include "crtrans/holo_map.hpp"
#include "crtrans/hypersurface.hpp"
#include "crtrans/parser.hpp"

// Problem files, schema "crtrans/1":
//
//   {
//     "schema": "crtrans/1",
//     "name": "...",
//     "source": {"n": 1, "vars": ["z", "w"], "rho": "Im(w) - abs2(z)"},
//     "target": {"n": 2, "rho": "Im(wp) + abs2(zp1) - abs2(zp2)"},
//     "map": ["...", "...", "..."],
//     "points": [["0", "0"]],
//     "points_target": [["0", "0", "0"]],
//     "options": {"max_order": 3, "samples": 20, "seed": 1},
//     "expect": {"k": 1, "a": "-2*z - 2*zeta_z"},
//     "construct": {"n": 1, "deltas": [1]}
//   }
//
// "vars" defaults to z1..zn, w for the source and zp1..zpn', wp for the
// target. "points", "points_target", "options", "expect" and "construct"
// are optional.

namespace crtrans {

inline constexpr const char* kSchema = "crtrans/1";

struct ProblemOptions {
  std::optional<unsigned> max_order;
  std::size_t samples = 20;
  std::uint64_t seed = 1;
};

struct Expectation {
  unsigned k = 0;
  Poly a;
  std::string a_text;
};

struct Problem {
  std::string name;
  Hypersurface source;
  Hypersurface target;
  HoloMap map;
  std::vector<SurfacePoint> points;
  std::vector<SurfacePoint> points_target;
  ProblemOptions options;
  std::optional<Expectation> expect;
  std::optional<CounterexampleSpec> construct;
  nlohmann::json raw;
};

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline std::string text_field(const nlohmann::json& j, const char* key, const std::string& where) {
  const auto& v = field(j, key, where);
  if (!v.is_string()) throw InvalidInput(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

inline SpacePtr read_space(const nlohmann::json& side, bool is_target, const std::string& where) {
  const auto& n = field(side, "n", where);
  if (!n.is_number_unsigned() || n.get<std::size_t>() == 0)
    throw InvalidInput(where + ".n: expected a positive integer");
  const std::size_t dim = n.get<std::size_t>();
  if (!side.contains("vars")) return is_target ? VarSpace::standard_target(dim) : VarSpace::standard(dim);
  const auto& vars = side.at("vars");
  if (!vars.is_array() || vars.size() != dim + 1)
    throw InvalidInput(where + ".vars: expected " + std::to_string(dim + 1) + " names");
  std::vector<std::string> names;
  for (const auto& v : vars) {
    if (!v.is_string()) throw InvalidInput(where + ".vars: names must be strings");
    names.push_back(v.get<std::string>());
  }
  return VarSpace::make(std::move(names));
}

/// Expression errors are rethrown with the field they came from.
template <typename F>
auto in_field(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw InvalidInput(where + ": " + e.what());
  }
}

inline std::vector<SurfacePoint> read_points(const nlohmann::json& root, const char* key, const Hypersurface& m) {
  std::vector<SurfacePoint> out;
  if (!root.contains(key)) return out;
  const auto& arr = root.at(key);
  if (!arr.is_array()) throw InvalidInput(std::string(key) + ": expected an array of points");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string where = std::string(key) + "[" + std::to_string(i) + "]";
    if (!arr[i].is_array()) throw InvalidInput(where + ": expected an array of coordinates");
    Point p;
    for (std::size_t c = 0; c < arr[i].size(); ++c) {
      const auto& v = arr[i][c];
      if (!v.is_string()) throw InvalidInput(where + ": coordinates must be strings");
      p.push_back(in_field(where, [&] { return parse_constant(v.get<std::string>()); }));
    }
    out.push_back(in_field(where, [&] { return verify_point(m, p); }));
  }
  return out;
}

} // namespace detail

inline Problem parse_problem(const nlohmann::json& root) {
  using detail::field;
  using detail::in_field;
  if (!root.is_object()) throw InvalidInput("problem file must be a JSON object");
  if (root.contains("schema") && root.at("schema") != kSchema)
    throw InvalidInput("unsupported schema " + root.at("schema").dump());

  const auto& js = field(root, "source", "problem");
  const auto& jt = field(root, "target", "problem");
  auto src = detail::read_space(js, false, "source");
  auto tgt = detail::read_space(jt, true, "target");
  Hypersurface m = in_field("source.rho", [&] { return Hypersurface(parse_poly(detail::text_field(js, "rho", "source"), src)); });
  Hypersurface mp = in_field("target.rho", [&] { return Hypersurface(parse_poly(detail::text_field(jt, "rho", "target"), tgt)); });

  const auto& jm = field(root, "map", "problem");
  if (!jm.is_array()) throw InvalidInput("map: expected an array of expressions");
  std::vector<Poly> comps;
  for (std::size_t i = 0; i < jm.size(); ++i) {
    const std::string where = "map[" + std::to_string(i) + "]";
    if (!jm[i].is_string()) throw InvalidInput(where + ": expected a string");
    comps.push_back(in_field(where, [&] { return parse_poly(jm[i].get<std::string>(), src); }));
  }
  HoloMap h = in_field("map", [&] { return HoloMap(src, tgt, std::move(comps)); });

  ProblemOptions opts;
  if (root.contains("options")) {
    const auto& o = root.at("options");
    if (o.contains("max_order")) opts.max_order = o.at("max_order").get<unsigned>();
    if (o.contains("samples")) opts.samples = o.at("samples").get<std::size_t>();
    if (o.contains("seed")) opts.seed = o.at("seed").get<std::uint64_t>();
  }

  std::optional<Expectation> expect;
  if (root.contains("expect")) {
    const auto& e = root.at("expect");
    Expectation x;
    x.k = field(e, "k", "expect").get<unsigned>();
    x.a_text = detail::text_field(e, "a", "expect");
    x.a = in_field("expect.a", [&] { return parse_poly(x.a_text, src); });
    expect = std::move(x);
  }

  std::optional<CounterexampleSpec> cons;
  if (root.contains("construct")) {
    const auto& c = root.at("construct");
    CounterexampleSpec spec;
    spec.n = field(c, "n", "construct").get<std::size_t>();
    spec.deltas = field(c, "deltas", "construct").get<std::vector<int>>();
    spec.validate();
    cons = spec;
  }

  auto pts = detail::read_points(root, "points", m);
  auto tpts = detail::read_points(root, "points_target", mp);
  return {root.value("name", std::string{}),
          std::move(m),
          std::move(mp),
          std::move(h),
          std::move(pts),
          std::move(tpts),
          opts,
          std::move(expect),
          cons,
          root};
}

inline Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "': file not found or unreadable");
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
  try {
    return parse_problem(root);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("'" + path + "': " + e.what());
  }
}

/// Problem file for a constructed example: source hyperquadric, target,
/// map, the origin on both sides, and the expected factorization.
inline nlohmann::json problem_json(const CounterexampleOutput& out) {
  nlohmann::json j;
  j["schema"] = kSchema;
  std::string signs;
  for (int d : out.spec.deltas) signs += d > 0 ? '+' : '-';
  j["name"] = "construct n=" + std::to_string(out.spec.n) + " deltas=" + signs;
  j["source"] = {{"n", out.spec.n}, {"rho", out.rho.str()}};
  j["target"] = {{"n", 2 * out.spec.n + 1}, {"rho", out.rho_target.str()}};
  auto& comps = j["map"] = nlohmann::json::array();
  for (std::size_t k = 0; k < out.map.size(); ++k) comps.push_back(out.map[k].str());
  j["points"] = nlohmann::json::array({std::vector<std::string>(out.spec.n + 1, "0")});
  j["points_target"] = nlohmann::json::array({std::vector<std::string>(2 * out.spec.n + 2, "0")});
  j["expect"] = {{"k", 2}, {"a", "-4"}};
  j["construct"] = {{"n", out.spec.n}, {"deltas", out.spec.deltas}};
  return j;
}

} // namespace crtrans
