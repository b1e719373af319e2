// crtrans: command-line front end.
//
//   crtrans analyze FILE [--format text|json] [--output PATH] [--seed U64]
//   crtrans construct --n N --deltas +,-,...
//   crtrans verify FILE
//
// Exit status: 0 ok, 1 inconsistency found, 2 input error.

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "crtrans/construct.hpp"
#include "crtrans/problem.hpp"
#include "crtrans/report.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInconsistent = 1;
constexpr int kInputError = 2;

struct Common {
  std::string file;
  std::string format = "text";
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::optional<unsigned> max_order;
};

void add_common(CLI::App* cmd, Common& c, bool needs_file) {
  if (needs_file) cmd->add_option("file", c.file, "problem file (JSON)")->required();
  cmd->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--output,-o", c.output, "write the report here instead of stdout");
  cmd->add_option("--seed", c.seed, "sampling seed (overrides the file)");
  cmd->add_option("--samples", c.samples, "number of sampled points (overrides the file)");
  cmd->add_option("--max-order", c.max_order, "nondegeneracy search cap");
}

void emit(const Common& c, const std::string& text) {
  if (c.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output);
  if (!out) throw crtrans::InvalidInput("cannot write '" + c.output + "'");
  out << text;
}

std::string render(const Common& c, const nlohmann::json& j) {
  return c.format == "json" ? j.dump(2) + "\n" : crtrans::render_text(j);
}

crtrans::RunSettings settings(const Common& c, const crtrans::Problem& pb) {
  auto rs = crtrans::settings_for(pb);
  if (c.seed) rs.seed = *c.seed;
  if (c.samples) rs.samples = *c.samples;
  if (c.max_order) rs.max_order = *c.max_order;
  return rs;
}

std::vector<int> parse_deltas(const std::string& text, std::size_t n) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "+" || tok == "+1" || tok == "1") {
      out.push_back(1);
    } else if (tok == "-" || tok == "-1") {
      out.push_back(-1);
    } else {
      throw crtrans::InvalidInput("bad sign '" + tok + "' in --deltas");
    }
  }
  if (out.size() != n) throw crtrans::InvalidInput("--deltas needs " + std::to_string(n) + " signs");
  return out;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of polynomial holomorphic maps between real hypersurfaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(crtrans::kVersion));

  using Runner = std::function<nlohmann::json(const crtrans::Problem&, const crtrans::RunSettings&)>;
  struct FileCommand {
    const char* name;
    const char* help;
    Runner run;
  };
  const std::vector<FileCommand> file_commands = {
      {"analyze", "full pipeline: factorization, pointwise verdicts, hypothesis reports", crtrans::run_analyze},
      {"factorize", "rho' o H = a rho^k", crtrans::run_factorize},
      {"levi", "Levi signatures at supplied and sampled points", crtrans::run_levi},
      {"segre-rank", "rank of H along Segre varieties", crtrans::run_segre_rank},
      {"nondegen", "finite nondegeneracy orders", crtrans::run_nondegen},
      {"check", "hypothesis checks", crtrans::run_check},
  };

  Common common;
  std::vector<std::pair<CLI::App*, Runner>> subs;
  for (const auto& fc : file_commands) {
    auto* cmd = app.add_subcommand(fc.name, fc.help);
    add_common(cmd, common, true);
    subs.emplace_back(cmd, fc.run);
  }

  auto* verify = app.add_subcommand("verify", "re-check the identities recorded in a problem file");
  add_common(verify, common, true);

  std::size_t cons_n = 1;
  std::string cons_deltas;
  auto* construct = app.add_subcommand("construct", "emit the degree-two counterexample as a problem file");
  construct->add_option("--n", cons_n, "CR dimension of the source")->required()->check(CLI::PositiveNumber);
  construct->add_option("--deltas", cons_deltas, "comma separated signs, e.g. +,-")->required();
  construct->add_option("--output,-o", common.output, "write the problem file here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (construct->parsed()) {
      crtrans::CounterexampleSpec spec{cons_n, parse_deltas(cons_deltas, cons_n)};
      const auto out = crtrans::assemble_and_verify(spec);
      emit(common, crtrans::problem_json(out).dump(2) + "\n");
      return kOk;
    }

    const auto pb = crtrans::load_problem(common.file);
    const auto rs = settings(common, pb);

    if (verify->parsed()) {
      const auto j = crtrans::run_verify(pb, rs);
      if (common.format == "json") {
        emit(common, j.dump(2) + "\n");
      } else {
        std::string text;
        for (const auto& l : j["identities"])
          text += l["identity"].get<std::string>() + ": " + (l["ok"].get<bool>() ? "OK" : "FAILED") + "\n";
        emit(common, text);
      }
      return j["consistent"].get<bool>() ? kOk : kInconsistent;
    }

    for (const auto& [cmd, run] : subs) {
      if (!cmd->parsed()) continue;
      const auto j = run(pb, rs);
      emit(common, render(common, j));
      return j.value("consistent", true) ? kOk : kInconsistent;
    }
  } catch (const crtrans::IdentityFailure& e) {
    std::cerr << "crtrans: " << e.what() << "\n";
    return kInconsistent;
  } catch (const crtrans::Error& e) {
    std::cerr << "crtrans: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "crtrans: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
