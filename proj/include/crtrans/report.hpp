#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "crtrans/construct.hpp"
#include "crtrans/problem.hpp"
#include "crtrans/sampling.hpp"
#include "crtrans/transversality.hpp"
#include "crtrans/version.hpp"

// Analyses over a loaded problem, emitted as JSON documents. Keys of
// nlohmann::json objects are sorted, so equal inputs give equal bytes.

namespace crtrans {

struct RunSettings {
  std::uint64_t seed = 1;
  std::size_t samples = 20;
  std::optional<unsigned> max_order;
};

inline RunSettings settings_for(const Problem& pb) { return {pb.options.seed, pb.options.samples, pb.options.max_order}; }

struct LabeledPoint {
  SurfacePoint point;
  std::string origin; // "supplied", "sampled" or "image"
};

/// Supplied points of M followed by seeded samples.
inline std::vector<LabeledPoint> source_points(const Problem& pb, const RunSettings& rs) {
  std::vector<LabeledPoint> out;
  for (const auto& p : pb.points) out.push_back({p, "supplied"});
  for (auto& p : sample_points(pb.source, rs.samples, rs.seed)) out.push_back({std::move(p), "sampled"});
  return out;
}

/// Supplied points of M' followed by the images of the supplied source
/// points that are smooth points of M'. When both are empty, images of the
/// sampled source points are used.
inline std::vector<LabeledPoint> target_points(const Problem& pb, const std::vector<LabeledPoint>& src) {
  std::vector<LabeledPoint> out;
  for (const auto& p : pb.points_target) out.push_back({p, "supplied"});
  auto add_images = [&](bool supplied_only) {
    for (const auto& lp : src) {
      if (supplied_only && lp.origin != "supplied") continue;
      const Point img = pb.map(lp.point.coords);
      const bool dup = std::any_of(out.begin(), out.end(), [&](const auto& q) { return q.point.coords == img; });
      if (dup) continue;
      try {
        out.push_back({verify_point(pb.target, img), "image"});
      } catch (const Error&) {
      }
    }
  };
  add_images(true);
  if (out.empty()) add_images(false);
  return out;
}

namespace detail {

inline nlohmann::json point_json(const Point& p) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& c : p) j.push_back(c.str());
  return j;
}

inline nlohmann::json signature_json(const Signature& s) {
  return {{"e_plus", s.e_plus}, {"e_minus", s.e_minus}, {"e_zero", s.e_zero}, {"e", s.e()}, {"e0", s.e0()}};
}

inline nlohmann::json nondeg_json(const NondegResult& r) {
  nlohmann::json j{{"max_order", r.max_order}};
  j["order"] = r.order ? nlohmann::json(*r.order) : nlohmann::json(nullptr);
  j["detected"] = r.detected();
  return j;
}

inline nlohmann::json hypothesis_json(const HypothesisReport& rep) {
  nlohmann::json j{{"theorem", rep.theorem}, {"consistent", rep.consistent}};
  nlohmann::json facts = nlohmann::json::object();
  for (const auto& [k, v] : rep.facts) facts[k] = v;
  j["facts"] = facts;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rep.checks) {
    nlohmann::json values = nlohmann::json::object();
    for (const auto& [k, v] : c.values) values[k] = v;
    checks.push_back({{"name", c.name}, {"point", c.point}, {"holds", c.holds}, {"values", values}});
  }
  j["checks"] = checks;
  j["notes"] = rep.notes;
  return j;
}

inline nlohmann::json space_json(const Hypersurface& m) {
  nlohmann::json vars = nlohmann::json::array();
  for (std::size_t a = 0; a < m.ambient_dim(); ++a) vars.push_back(m.space()->name(a));
  return {{"n", m.n()}, {"vars", vars}, {"rho", m.rho().str()}};
}

} // namespace detail

/// Common header: tool, version, command, seed and the echoed input.
inline nlohmann::json report_header(const std::string& command, const Problem& pb, const RunSettings& rs) {
  nlohmann::json j;
  j["tool"] = "crtrans";
  j["version"] = kVersion;
  j["command"] = command;
  j["seed"] = rs.seed;
  j["samples"] = rs.samples;
  nlohmann::json map = nlohmann::json::array();
  for (const auto& c : pb.map.components()) map.push_back(c.str());
  j["input"] = {{"name", pb.name}, {"source", detail::space_json(pb.source)}, {"target", detail::space_json(pb.target)},
                {"map", map}};
  j["consistent"] = true;
  return j;
}

/// maps_into, factorization and the expectation match, if any.
inline nlohmann::json factorize_section(const Problem& pb, std::optional<FactorResult>& fr, bool& consistent) {
  nlohmann::json j;
  const auto mi = maps_into(pb.source, pb.target, pb.map);
  j["maps_into"] = std::string(to_string(mi));
  if (mi != MapsInto::No) {
    fr = factorize(pb.source, pb.target, pb.map);
    j["factorization"] = {{"contained", fr->contained}, {"k", fr->k}, {"a", fr->a.str()}};
    j["nontransversal_everywhere"] = !fr->contained && fr->k >= 2;
  }
  if (pb.expect) {
    const bool match = fr && !fr->contained && fr->k == pb.expect->k && fr->a == pb.expect->a;
    j["expectation"] = {{"k", pb.expect->k}, {"a", pb.expect->a.str()}, {"matches", match}};
    if (!match) consistent = false;
  }
  return j;
}

inline nlohmann::json run_factorize(const Problem& pb, const RunSettings& rs) {
  auto j = report_header("factorize", pb, rs);
  std::optional<FactorResult> fr;
  bool consistent = true;
  j.update(factorize_section(pb, fr, consistent));
  j["consistent"] = consistent;
  return j;
}

inline nlohmann::json run_levi(const Problem& pb, const RunSettings& rs) {
  auto j = report_header("levi", pb, rs);
  const auto src = source_points(pb, rs);
  nlohmann::json s = nlohmann::json::array();
  for (const auto& lp : src)
    s.push_back({{"point", detail::point_json(lp.point.coords)}, {"origin", lp.origin},
                 {"levi", detail::signature_json(levi_signature(pb.source, lp.point).inertia)}});
  j["source_points"] = s;
  nlohmann::json t = nlohmann::json::array();
  for (const auto& lp : target_points(pb, src))
    t.push_back({{"point", detail::point_json(lp.point.coords)}, {"origin", lp.origin},
                 {"levi", detail::signature_json(levi_signature(pb.target, lp.point).inertia)}});
  j["target_points"] = t;
  if (auto hq = is_hyperquadric(pb.target)) j["target_hyperquadric"] = detail::signature_json(*hq);
  return j;
}

inline nlohmann::json run_segre_rank(const Problem& pb, const RunSettings& rs) {
  auto j = report_header("segre-rank", pb, rs);
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& lp : source_points(pb, rs))
    arr.push_back({{"point", detail::point_json(lp.point.coords)}, {"origin", lp.origin},
                   {"segre_rank", segre_map_rank(pb.source, pb.map, lp.point)}});
  j["points"] = arr;
  j["jacobian_generic_rank"] = generic_rank(PolyMatrix(pb.map.jacobian()), rs.seed);
  return j;
}

inline nlohmann::json run_nondegen(const Problem& pb, const RunSettings& rs) {
  auto j = report_header("nondegen", pb, rs);
  const auto generic = generic_finite_nondeg(pb.source, rs.max_order);
  j["generic"] = detail::nondeg_json(generic);
  nlohmann::json arr = nlohmann::json::array();
  const unsigned cap = generic.max_order;
  bool consistent = true;
  for (const auto& lp : source_points(pb, rs)) {
    const auto r = finite_nondeg_order(pb.source, lp.point, cap);
    // a pointwise order below the generic one is impossible
    if (generic.order && r.order && *r.order < *generic.order) consistent = false;
    arr.push_back({{"point", detail::point_json(lp.point.coords)}, {"origin", lp.origin},
                   {"nondegeneracy", detail::nondeg_json(r)}});
  }
  j["points"] = arr;
  j["consistent"] = consistent;
  return j;
}

/// Hypothesis checks of the dichotomy, the hyperquadric variant and the
/// signature-gap extension, plus the equivalence conditions.
inline nlohmann::json hypotheses_section(const Problem& pb, const RunSettings& rs,
                                         const std::vector<LabeledPoint>& src, bool& consistent) {
  nlohmann::json j;
  std::vector<SurfacePoint> sp;
  for (const auto& lp : src) sp.push_back(lp.point);
  std::vector<SurfacePoint> tp;
  for (const auto& lp : target_points(pb, src)) tp.push_back(lp.point);

  const auto d = check_dichotomy_conditions(pb.source, pb.target, pb.map, tp, rs.max_order);
  const auto q = check_hyperquadric_target(pb.source, pb.target, sp);
  const auto g = check_signature_gap(pb.source, pb.target, pb.map, sp, tp, rs.max_order);
  j["hypotheses"] = nlohmann::json::array({detail::hypothesis_json(d), detail::hypothesis_json(q), detail::hypothesis_json(g)});
  consistent = consistent && d.consistent && q.consistent && g.consistent;

  if (!sp.empty() && maps_into(pb.source, pb.target, pb.map) != MapsInto::No) {
    const auto e = equivalence_suite(pb.source, pb.target, pb.map, sp.front(), rs.max_order);
    j["equivalence"] = {{"point", detail::point_json(sp.front().coords)},
                        {"cond_i", e.cond_i},
                        {"cond_iv", e.cond_iv},
                        {"cond_v", e.cond_v},
                        {"generic_rank", e.generic_rank},
                        {"equidimensional", e.equidimensional},
                        {"source_nondegenerate", e.source_nondegenerate},
                        {"consistent", e.consistent}};
    consistent = consistent && e.consistent;
  }
  return j;
}

inline nlohmann::json run_check(const Problem& pb, const RunSettings& rs) {
  auto j = report_header("check", pb, rs);
  bool consistent = true;
  j.update(hypotheses_section(pb, rs, source_points(pb, rs), consistent));
  j["consistent"] = consistent;
  return j;
}

/// Full pipeline.
inline nlohmann::json run_analyze(const Problem& pb, const RunSettings& rs) {
  auto j = report_header("analyze", pb, rs);
  bool consistent = true;
  std::optional<FactorResult> fr;
  j.update(factorize_section(pb, fr, consistent));

  const auto generic = generic_finite_nondeg(pb.source, rs.max_order);
  j["source_nondegeneracy"] = detail::nondeg_json(generic);

  const auto src = source_points(pb, rs);
  nlohmann::json pts = nlohmann::json::array();
  std::size_t agree = 0;
  std::size_t decided = 0;
  for (const auto& lp : src) {
    nlohmann::json e{{"point", detail::point_json(lp.point.coords)}, {"origin", lp.origin}};
    e["levi"] = detail::signature_json(levi_signature(pb.source, lp.point).inertia);
    e["segre_rank"] = segre_map_rank(pb.source, pb.map, lp.point);
    e["nondegeneracy"] = detail::nondeg_json(finite_nondeg_order(pb.source, lp.point, generic.max_order));
    if (fr && !fr->contained) {
      try {
        const auto v = transversal_at(pb.source, pb.target, pb.map, *fr, lp.point);
        e["transversal"] = {{"verdict", v.transversal}, {"method_a", v.method_a}, {"method_b", v.method_b},
                            {"agree", v.agree}};
        ++decided;
        if (v.agree) {
          ++agree;
        } else {
          consistent = false;
        }
      } catch (const ImageSingular& ex) {
        e["transversal"] = {{"skipped", ex.what()}};
      }
    }
    pts.push_back(std::move(e));
  }
  j["points"] = pts;
  j["transversality_agreement"] = {{"decided", decided}, {"agree", agree}};
  if (fr && !fr->contained) j["nontransversal_locus"] = fr->k >= 2 ? std::string("all of M") : "zero set of a on M: " + fr->a.str();

  j.update(hypotheses_section(pb, rs, src, consistent));
  j["consistent"] = consistent;
  return j;
}

/// Line-per-identity recheck of a problem file.
struct VerifyLine {
  std::string label;
  bool ok = false;
};

inline std::vector<VerifyLine> run_verify_lines(const Problem& pb) {
  std::vector<VerifyLine> lines;
  if (pb.construct) {
    const auto& spec = *pb.construct;
    if (pb.source.n() != spec.n || pb.target.ambient_dim() != 2 * spec.n + 2)
      throw InvalidInput("construct block does not match the source and target dimensions");
    const auto c = verify_construction(spec, pb.source.rho(), build_delta_matrix(spec), pb.map, build_tensor(spec),
                                       pb.target.rho());
    lines.push_back({"gram inertia (n+1, n, 0)", c.gram_inertia});
    lines.push_back({"tensor conjugate symmetry", c.tensor_symmetric});
    lines.push_back({"quadratic identity", c.quadratic_identity});
    lines.push_back({"tensor identity", c.tensor_identity});
    lines.push_back({"combined identity", c.combined_identity});
    lines.push_back({"rho'\xE2\x88\x98H + 4 rho^2 = 0", c.final_identity});
  }
  if (pb.expect) {
    const Poly u = compose(pb.target.rho(), pb.map);
    const Poly rhs = pb.expect->a * pb.source.rho().pow(pb.expect->k);
    lines.push_back({"rho'\xE2\x88\x98H = (" + pb.expect->a.str() + ") rho^" + std::to_string(pb.expect->k), u == rhs});
    lines.push_back({"rho does not divide a", !exact_divide(pb.expect->a, pb.source.rho()).has_value()});
  }
  if (lines.empty()) throw InvalidInput("nothing to verify: the file has neither \"construct\" nor \"expect\"");
  return lines;
}

inline nlohmann::json run_verify(const Problem& pb, const RunSettings& rs) {
  auto j = report_header("verify", pb, rs);
  nlohmann::json arr = nlohmann::json::array();
  bool ok = true;
  for (const auto& l : run_verify_lines(pb)) {
    arr.push_back({{"identity", l.label}, {"ok", l.ok}});
    ok = ok && l.ok;
  }
  j["identities"] = arr;
  j["consistent"] = ok;
  return j;
}

/// Indented key/value rendering of a report.
inline void render_text(const nlohmann::json& j, std::string& out, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const nlohmann::json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto compact = [](const nlohmann::json& v) {
    return std::all_of(v.begin(), v.end(), [](const auto& x) { return x.is_primitive(); });
  };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      if (v.is_primitive()) {
        out += pad + k + ": " + scalar(v) + "\n";
      } else if (v.is_array() && compact(v)) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ", ") + scalar(x);
        out += pad + k + ": [" + s + "]\n";
      } else {
        out += pad + k + ":\n";
        render_text(v, out, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_primitive()) {
        out += pad + "- " + scalar(v) + "\n";
      } else {
        out += pad + "-\n";
        render_text(v, out, indent + 2);
      }
    }
  } else {
    out += pad + scalar(j) + "\n";
  }
}

inline std::string render_text(const nlohmann::json& j) {
  std::string out;
  render_text(j, out);
  return out;
}

} // namespace crtrans
