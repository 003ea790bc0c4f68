#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fockmult/checks.hpp"
#include "fockmult/matricial.hpp"

namespace fockmult::cli {

namespace {

struct Config {
  std::string command;
  std::string subject;  // verify check or identify target
  std::string spec_text;
  std::string symbol_text;
  std::optional<int> level;
  std::string levels_text;
  std::optional<double> tol;
  std::optional<std::size_t> grid;
  std::optional<std::size_t> trials;
  std::uint64_t seed = 0;
  std::string out_path;
  std::string format = "json";
  std::size_t n = 2;
  std::optional<std::size_t> cap;
  bool no_timing = false;
};

struct Outcome {
  Json results;
  std::string verdict;
  int code = kPass;
  std::string csv;
};

std::string read_argument(const std::string& text, const char* what) {
  if (text.empty() || text.front() != '@') return text;
  std::ifstream in(text.substr(1));
  if (!in) throw Error(ErrorCode::InvalidArgument, std::string("cannot read ") + what + " file " + text.substr(1));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> levels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || v < 0) {
      throw Error(ErrorCode::InvalidArgument, "--levels: \"" + item + "\" is not a non-negative integer");
    }
    levels.push_back(v);
  }
  if (levels.empty()) throw Error(ErrorCode::InvalidArgument, "--levels is empty");
  for (std::size_t i = 1; i < levels.size(); ++i) {
    if (levels[i] <= levels[i - 1]) throw Error(ErrorCode::InvalidArgument, "--levels must be strictly increasing");
  }
  return levels;
}

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class Runner {
 public:
  explicit Runner(const Config& c) : cfg_(c), spec_(load_spec(c)) {
    if (!c.symbol_text.empty()) symbol_ = polynomial_from_json(spec_, parse_json_text(read_argument(c.symbol_text, "symbol"), "symbol"));
  }

  Json resolved_config() const {
    Json j{{"command", cfg_.command}, {"spec", monoid_spec_to_json(spec_)}, {"seed", cfg_.seed},
           {"format", cfg_.format}};
    if (!cfg_.subject.empty()) j[cfg_.command == "verify" ? "check" : "target"] = cfg_.subject;
    j["symbol"] = symbol_ ? polynomial_to_json(*symbol_) : Json(nullptr);
    for (const auto& [k, v] : resolved_) j[k] = v;
    j["capacity"] = spec_.capacity();
    return j;
  }

  Outcome run() {
    if (cfg_.command == "norm") return norm();
    if (cfg_.command == "sweep") return sweep();
    if (cfg_.command == "verify") return verify();
    return identify();
  }

 private:
  static MonoidSpec load_spec(const Config& c) {
    MonoidSpec spec = parse_monoid_spec(read_argument(c.spec_text, "spec"));
    return c.cap ? spec.with_capacity(*c.cap) : spec;
  }

  const Polynomial& require_symbol() const {
    if (!symbol_) throw Error(ErrorCode::InvalidArgument, cfg_.command + " needs --symbol");
    return *symbol_;
  }

  template <typename T>
  T resolve(const char* key, const std::optional<T>& given, T fallback) {
    const T v = given.value_or(fallback);
    resolved_[key] = v;
    return v;
  }

  int default_level() const { return spec_.is_finite() ? 0 : 3; }

  Outcome norm() {
    const Polynomial& phi = require_symbol();
    const int level = resolve("level", cfg_.level, std::max(phi.degree(), 0));
    NormOptions opts;
    opts.tol = resolve("tol", cfg_.tol, 1e-12);
    const MultiplierPair p = make_multiplier_pair(spec_, phi, level);
    const NormEstimate e = pair_norm(p, opts);
    Outcome o;
    o.results = Json{{"level", level}, {"norm", e.value}, {"iterations", e.iterations}, {"converged", e.converged}};
    o.verdict = e.converged ? "converged" : "not_converged";
    o.code = e.converged ? kPass : kNotConverged;
    o.csv = "level,norm\n" + std::to_string(level) + "," + csv_number(e.value) + "\n";
    return o;
  }

  std::vector<int> levels_or_throw() {
    if (cfg_.levels_text.empty()) throw Error(ErrorCode::InvalidArgument, cfg_.command + " needs --levels");
    std::vector<int> levels = parse_levels(cfg_.levels_text);
    resolved_["levels"] = levels;
    return levels;
  }

  Outcome sweep() {
    const Polynomial& phi = require_symbol();
    const std::vector<int> levels = levels_or_throw();
    const double tol = resolve("tol", cfg_.tol, 1e-6);
    const NormReport r = finfty_sweep(spec_, phi, levels, tol);
    Outcome o;
    o.results = Json::parse(r.to_json());
    o.results["iterations"] = r.iterations;
    o.results["kernel_converged"] = r.kernel_converged;
    o.results["monotone"] = r.is_monotone();
    o.verdict = r.converged ? "converged" : "not_converged";
    o.code = r.converged ? kPass : kNotConverged;
    o.csv = r.to_csv();
    return o;
  }

  Outcome verify() {
    const std::string& check = cfg_.subject;
    Outcome o;
    if (check == "ruan") {
      RuanOptions ro;
      ro.n = cfg_.n;
      resolved_["n"] = cfg_.n;
      ro.trials = resolve("trials", cfg_.trials, std::size_t{50});
      ro.seed = cfg_.seed;
      ro.tol = resolve("tol", cfg_.tol, 1e-8);
      ro.level = resolve("level", cfg_.level, default_level());
      const RuanVerdict v = ruan_axiom_check(spec_, ro);
      o.results = Json::parse(v.to_json());
      return finish_verify(o, v.pass, v.worst_violation, v.trials);
    }

    CheckOptions co;
    co.seed = cfg_.seed;
    CheckVerdict v;
    if (check == "cstar") {
      co.trials = resolve("trials", cfg_.trials, std::size_t{100});
      co.tol = resolve("tol", cfg_.tol, 1e-8);
      v = check_cstar(spec_, co);
    } else if (check == "ustar") {
      co.trials = resolve("trials", cfg_.trials, std::size_t{100});
      co.tol = resolve("tol", cfg_.tol, 1e-12);
      co.level = resolve("level", cfg_.level, spec_.is_finite() ? 0 : 8);
      v = check_u_laws(spec_, co);
    } else if (check == "flip") {
      co.trials = resolve("trials", cfg_.trials, std::size_t{50});
      co.tol = resolve("tol", cfg_.tol, 1e-12);
      co.level = resolve("level", cfg_.level, 3);
      v = check_flip(spec_, co);
    } else if (check == "intertwine") {
      co.trials = resolve("trials", cfg_.trials, std::size_t{20});
      co.tol = resolve("tol", cfg_.tol, 1e-12);
      co.level = resolve("level", cfg_.level, default_level());
      v = check_intertwine(spec_, co, symbol_);
    } else if (check == "abelian") {
      co.trials = resolve("trials", cfg_.trials, std::size_t{20});
      co.tol = resolve("tol", cfg_.tol, 0.0);
      co.level = resolve("level", cfg_.level, default_level());
      v = check_abelian(spec_, co);
    } else {
      throw Error(ErrorCode::InvalidArgument, "unknown check \"" + check + "\"");
    }
    o.results = v.to_json();
    return finish_verify(o, v.pass, v.max_residual, v.trials);
  }

  Outcome finish_verify(Outcome& o, bool pass, double residual, std::size_t trials) {
    o.verdict = pass ? "pass" : "fail";
    o.code = pass ? kPass : kFailed;
    o.csv = "check,pass,max_residual,trials\n" + cfg_.subject + "," + (pass ? "true" : "false") + "," +
            csv_number(residual) + "," + std::to_string(trials) + "\n";
    return o;
  }

  Outcome identify() {
    const std::string& target = cfg_.subject;
    const Polynomial& phi = require_symbol();
    Outcome o;
    if (target == "circulant") {
      const double tol = resolve("tol", cfg_.tol, 1e-12);
      const CirculantVerdict v = circulant_of(spec_, phi, tol);
      Json matrix = Json::array();
      const std::vector<Complex> dense = v.matrix.entries().to_dense();
      const std::size_t n = v.matrix.entries().cols();
      for (std::size_t i = 0; i < v.matrix.entries().rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < n; ++j) row.push_back(Json{dense[i * n + j].real(), dense[i * n + j].imag()});
        matrix.push_back(std::move(row));
      }
      Json column = Json::array();
      for (const Complex& c : v.first_column) column.push_back(Json{c.real(), c.imag()});
      const bool pass = v.circulant && v.symbol_roundtrip;
      o.results = Json{{"matrix", matrix},
                       {"circulant", v.circulant},
                       {"max_deviation", v.max_deviation},
                       {"first_column", column},
                       {"symbol_roundtrip", v.symbol_roundtrip}};
      o.verdict = pass ? "pass" : "fail";
      o.code = pass ? kPass : kFailed;
      o.csv = format_matrix_csv(v.matrix);
      return o;
    }
    if (target == "hardy") {
      std::vector<int> levels;
      if (!cfg_.levels_text.empty()) {
        levels = levels_or_throw();
      } else {
        const int fallback = spec_.kind() == MonoidKind::NonNegVectors ? 24 : 512;
        levels = {resolve("level", cfg_.level, std::max(fallback, phi.degree()))};
      }
      const double tol = resolve("tol", cfg_.tol, 1e-4);
      const std::size_t grid = resolve("grid", cfg_.grid, default_hardy_grid(spec_));
      const double sup = hardy_norm_grid(spec_, phi, grid);
      const NormReport r = finfty_sweep(spec_, phi, levels, 1e-6);
      const double gap = sup - r.norms.back();
      o.results = Json{{"levels", r.levels},      {"norms", r.norms},          {"sweep_final", r.norms.back()},
                       {"grid_size", grid},       {"grid_value", sup},         {"gap", gap},
                       {"monotone", r.is_monotone()}, {"kernel_converged", r.kernel_converged}};
      const bool pass = std::abs(gap) <= tol;
      o.verdict = !r.kernel_converged ? "not_converged" : pass ? "pass" : "fail";
      o.code = !r.kernel_converged ? kNotConverged : pass ? kPass : kFailed;
      o.csv = "level,sweep,grid,gap\n" + std::to_string(r.levels.back()) + "," + csv_number(r.norms.back()) + "," +
              csv_number(sup) + "," + csv_number(gap) + "\n";
      return o;
    }
    if (target == "popescu") {
      const int depth = resolve("level", cfg_.level, std::max(6, phi.degree()));
      const double tol = resolve("tol", cfg_.tol, 1e-6);
      std::vector<int> depths;
      std::vector<double> norms;
      bool converged = true;
      o.csv = "depth,norm\n";
      for (int k = std::max(1, phi.degree()); k <= depth; ++k) {
        const NormEstimate e = popescu_norm(spec_, phi, k);
        converged = converged && e.converged;
        depths.push_back(k);
        norms.push_back(e.value);
        o.csv += std::to_string(k) + "," + csv_number(e.value) + "\n";
      }
      const double increment = norms.size() >= 2 ? norms.back() - norms[norms.size() - 2] : 0.0;
      bool monotone = true;
      for (std::size_t i = 1; i < norms.size(); ++i) monotone = monotone && norms[i] >= norms[i - 1] - 1e-10;
      o.results = Json{{"depths", depths},
                       {"norms", norms},
                       {"last_increment", increment},
                       {"monotone", monotone},
                       {"kernel_converged", converged}};
      const bool pass = monotone && std::abs(increment) <= tol;
      o.verdict = !converged ? "not_converged" : pass ? "pass" : "fail";
      o.code = !converged ? kNotConverged : pass ? kPass : kFailed;
      return o;
    }
    throw Error(ErrorCode::InvalidArgument, "unknown identification target \"" + target + "\"");
  }

  const Config& cfg_;
  MonoidSpec spec_;
  std::optional<Polynomial> symbol_;
  std::map<std::string, Json> resolved_;
};

void add_common(CLI::App& cmd, Config& c) {
  cmd.add_option("--spec", c.spec_text, "monoid spec as JSON or @file")->required();
  cmd.add_option("--symbol", c.symbol_text, "symbol as a JSON term list or @file");
  cmd.add_option("--level", c.level, "truncation level (depth for popescu)")->check(CLI::NonNegativeNumber);
  cmd.add_option("--levels", c.levels_text, "comma-separated, strictly increasing levels");
  cmd.add_option("--tol", c.tol, "tolerance; its meaning depends on the command")->check(CLI::NonNegativeNumber);
  cmd.add_option("--grid", c.grid, "torus grid points per dimension")->check(CLI::PositiveNumber);
  cmd.add_option("--trials", c.trials, "number of sampled trials")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", c.seed, "seed for every sampled quantity");
  cmd.add_option("--out", c.out_path, "write the report here instead of stdout");
  cmd.add_option("--format", c.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  cmd.add_option("--n", c.n, "block size for the ruan check")->check(CLI::PositiveNumber);
  cmd.add_option("--cap", c.cap, "window capacity cap")->check(CLI::PositiveNumber);
  cmd.add_flag("--no-timing", c.no_timing, "report runtime_ms as 0 so reports are byte-identical");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiplier norms and identities on semigroup Fock spaces", "fockmult"};
  app.require_subcommand(1);
  Config c;

  auto* norm = app.add_subcommand("norm", "pair norm of a symbol at one level");
  auto* sweep = app.add_subcommand("sweep", "pair norms over increasing levels");
  auto* verify = app.add_subcommand("verify", "sampled identity checks");
  auto* identify = app.add_subcommand("identify", "compare against a classical model");
  for (auto* cmd : {norm, sweep, verify, identify}) add_common(*cmd, c);
  verify->add_option("check", c.subject, "cstar, flip, intertwine, ruan, ustar or abelian")
      ->required()
      ->check(CLI::IsMember({"cstar", "flip", "intertwine", "ruan", "ustar", "abelian"}));
  identify->add_option("target", c.subject, "circulant, hardy or popescu")
      ->required()
      ->check(CLI::IsMember({"circulant", "hardy", "popescu"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    const auto start = std::chrono::steady_clock::now();
    Runner runner(c);
    Outcome o = runner.run();
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    std::string report;
    if (c.format == "csv") {
      report = o.csv;
    } else {
      Json j{{"config", runner.resolved_config()},
             {"results", o.results},
             {"verdict", o.verdict},
             {"runtime_ms", c.no_timing ? 0.0 : ms}};
      report = j.dump(2) + "\n";
    }
    if (c.out_path.empty()) {
      out << report;
    } else {
      std::ofstream file(c.out_path);
      if (!(file << report)) throw Error(ErrorCode::InvalidArgument, "cannot write " + c.out_path);
    }
    if (o.code == kFailed) err << "verification failed; see the witness in the report\n";
    if (o.code == kNotConverged) err << "not converged\n";
    return o.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace fockmult::cli
