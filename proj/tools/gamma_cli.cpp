#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "gamma_channel/gamma_channel.hpp"

namespace gc = gamma_channel;
using Json = nlohmann::ordered_json;

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kBadInput = 2, kNotConverged = 3, kBudget = 4 };

struct Options {
  std::int64_t q = 2;
  int n = 1;
  int m = 1;
  std::string error = "constant:t=0";
  double tol = 1e-9;
  int max_iters = 100000;
  std::string format = "json";
  std::string out;
  std::string function;
  int u = -1, v = -1, h = -1, r = -1, rx = -1, rb = -1;
  std::string input;
};

struct Report {
  std::string command;
  Json params = Json::object();
  Json result = Json::object();
  Json diagnostics = Json::object();
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
  std::vector<std::string> text;
};

void diagnostic(const std::string& kind, int code, const std::string& message) {
  Json line = {{"error", kind}, {"exit_code", code}, {"message", message}};
  std::cerr << line.dump() << std::endl;
}

// Shortest representation that round-trips.
std::string fmt_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json dist_json(const gc::RankDistribution& d) {
  Json arr = Json::array();
  for (double p : d.values()) arr.push_back(p);
  return arr;
}

Json exact_json(const gc::RankDistribution& d) {
  Json arr = Json::array();
  if (!d.is_exact()) return arr;
  for (const auto& p : d.rationals()) arr.push_back(gc::to_string(p));
  return arr;
}

Json base_params(const Options& o) {
  return Json{{"q", o.q}, {"n", o.n}, {"m", o.m}, {"error", o.error}};
}

gc::ChannelParams make_params(const Options& o) {
  const gc::FieldOrder q(o.q);
  return gc::ChannelParams(q, o.n, o.m, gc::build_error_model(o.error, q, o.n, o.m));
}

void add_distribution_rows(Report& rep, const gc::RankDistribution& d) {
  rep.csv_header = {"rank", "exact", "probability"};
  for (std::size_t r = 0; r < d.size(); ++r) {
    rep.csv_rows.push_back({std::to_string(r), d.is_exact() ? gc::to_string(d.rationals()[r]) : "", fmt_double(d[r])});
    rep.text.push_back("  rank " + std::to_string(r) + ": " +
                       (d.is_exact() ? gc::to_string(d.rationals()[r]) + " = " : std::string()) + fmt_double(d[r]));
  }
}

int cmd_capacity(const Options& o, Report& rep) {
  rep.params = base_params(o);
  rep.params["tol"] = o.tol;
  rep.params["max_iters"] = o.max_iters;
  gc::GammaChannel channel(make_params(o));
  spdlog::info("precomputing rank kernel for q={} n={} m={}", o.q, o.n, o.m);
  gc::SolverConfig cfg;
  cfg.tolerance_bits = o.tol;
  cfg.max_iterations = o.max_iters;
  const gc::CapacityResult res = gc::maximize(channel, cfg);
  const double rate = res.capacity_bits / (static_cast<double>(o.n) * o.m * std::log2(static_cast<double>(o.q)));
  rep.result = Json{{"capacity_bits", res.capacity_bits},
                    {"normalized_rate", rate},
                    {"optimal_input", dist_json(res.optimal_input)},
                    {"output_ranks", dist_json(res.output_ranks)},
                    {"gap_bits", res.gap_bits},
                    {"iterations", res.iterations},
                    {"converged", res.converged}};
  rep.diagnostics["error_distribution"] = dist_json(channel.params().error);
  rep.csv_header = {"rank", "input_probability", "output_probability"};
  for (std::size_t r = 0; r < res.optimal_input.size(); ++r)
    rep.csv_rows.push_back({std::to_string(r), fmt_double(res.optimal_input[r]), fmt_double(res.output_ranks[r])});
  rep.text.push_back("capacity_bits: " + fmt_double(res.capacity_bits));
  rep.text.push_back("normalized_rate: " + fmt_double(rate));
  rep.text.push_back("gap_bits: " + fmt_double(res.gap_bits));
  rep.text.push_back("iterations: " + std::to_string(res.iterations));
  rep.text.push_back("converged: " + std::string(res.converged ? "true" : "false"));
  rep.text.push_back("optimal input rank distribution:");
  for (std::size_t r = 0; r < res.optimal_input.size(); ++r)
    rep.text.push_back("  rank " + std::to_string(r) + ": " + fmt_double(res.optimal_input[r]));
  if (!res.converged) {
    rep.diagnostics["status"] = "not_converged";
    return kNotConverged;
  }
  rep.diagnostics["status"] = "ok";
  return kOk;
}

int require(int value, const char* name) {
  if (value < 0) throw gc::InputError(std::string("matrixfn needs --") + name);
  return value;
}

int cmd_matrixfn(const Options& o, Report& rep) {
  rep.params = Json{{"q", o.q}, {"n", o.n}, {"m", o.m}, {"function", o.function}};
  gc::MatrixFunctions mf(gc::FieldOrder(o.q), o.n, o.m);
  gc::BigCount value;
  if (o.function == "f0") {
    const int u = require(o.u, "u");
    rep.params["u"] = u;
    value = mf.f0(u);
  } else if (o.function == "f1") {
    const int u = require(o.u, "u"), v = require(o.v, "v"), h = require(o.h, "h"), r = require(o.r, "r");
    rep.params["u"] = u;
    rep.params["v"] = v;
    rep.params["h"] = h;
    rep.params["r"] = r;
    value = mf.f1(u, v, h, r);
  } else if (o.function == "f2") {
    const int r = require(o.r, "r"), rx = require(o.rx, "rx"), rb = require(o.rb, "rb");
    rep.params["r"] = r;
    rep.params["rx"] = rx;
    rep.params["rb"] = rb;
    value = mf.f2(r, rx, rb);
  } else {
    throw gc::InputError("matrixfn function must be f0, f1 or f2");
  }
  rep.result = Json{{"value", gc::to_string(value)}};
  rep.diagnostics["status"] = "ok";
  rep.csv_header = {"function", "value"};
  rep.csv_rows.push_back({o.function, gc::to_string(value)});
  rep.text.push_back(gc::to_string(value));
  return kOk;
}

gc::RankDistribution parse_input(const Options& o) {
  const int k = std::min(o.n, o.m);
  if (o.input.empty() || o.input == "uniform") return gc::RankDistribution::uniform(static_cast<std::size_t>(k) + 1);
  std::string text = o.input;
  if (text.rfind("empirical:", 0) != 0) text = "empirical:" + text;
  return gc::build_error_model(text, gc::FieldOrder(o.q), o.n, o.m);
}

int cmd_ranks(const Options& o, Report& rep) {
  rep.params = base_params(o);
  rep.params["input"] = o.input.empty() ? "uniform" : o.input;
  gc::GammaChannel channel(make_params(o));
  const gc::RankDistribution input = parse_input(o);
  const gc::RankDistribution out = channel.output_rank_distribution(input);
  rep.result = Json{{"output_ranks", dist_json(out)}, {"output_ranks_exact", exact_json(out)}, {"exact", out.is_exact()}};
  rep.diagnostics["status"] = "ok";
  rep.text.push_back("output rank distribution:");
  add_distribution_rows(rep, out);
  return kOk;
}

int cmd_errormodel(const Options& o, Report& rep) {
  rep.params = base_params(o);
  const gc::RankDistribution d = make_params(o).error;
  rep.result = Json{{"distribution", dist_json(d)}, {"distribution_exact", exact_json(d)}, {"exact", d.is_exact()}};
  rep.diagnostics["status"] = "ok";
  rep.text.push_back("error rank distribution:");
  add_distribution_rows(rep, d);
  return kOk;
}

struct Check {
  std::string name;
  bool passed;
  double deviation;
  double threshold;
};

int cmd_verify(const Options& o, Report& rep) {
  rep.params = base_params(o);
  rep.params["tol"] = o.tol;
  const gc::ChannelParams params = make_params(o);
  const gc::FieldOrder& q = params.q;
  if (!q.is_prime()) throw gc::BudgetError("oracle supports prime q only");
  if (gc::oracle::channel_terms(params) > gc::oracle::kChannelBudget)
    throw gc::BudgetError("channel enumeration exceeds the 2^24 term budget");
  std::vector<Check> checks;
  gc::GammaChannel channel(params);
  gc::MatrixFunctions& mf = channel.matrix_functions();
  const int k = params.max_rank();

  const gc::oracle::FTables tables = gc::oracle::brute_f_functions(o.n, o.m, q);
  double mismatches = 0;
  for (const auto& [u, val] : tables.f0) mismatches += mf.f0(u) != val;
  for (const auto& [key, val] : tables.f1) mismatches += mf.f1(key[0], key[1], key[2], key[3]) != val;
  for (const auto& [key, val] : tables.f2) mismatches += mf.f2(key[0], key[1], key[2]) != val;
  checks.push_back({"f_tables", mismatches == 0, mismatches, 0});
  checks.push_back({"f1_well_defined", tables.well_defined, static_cast<double>(tables.conflicts.size()), 0});

  spdlog::info("building full channel table");
  const gc::oracle::TransitionTable table = gc::oracle::build_channel(params);
  std::vector<gc::RankDistribution> inputs{gc::RankDistribution::uniform(static_cast<std::size_t>(k) + 1)};
  for (int r = 0; r <= k; ++r) inputs.push_back(gc::RankDistribution::point_mass(static_cast<std::size_t>(k) + 1, static_cast<std::size_t>(r)));
  double marginal_dev = 0.0;
  bool marginal_exact = true;
  for (const auto& in : inputs) {
    const auto law = gc::oracle::output_rank_law(table, in);
    const auto model = channel.output_rank_distribution(in);
    for (std::size_t r = 0; r < law.size(); ++r) {
      const gc::Rational diff = law[r] - model.rational(r);
      if (diff != 0) marginal_exact = false;
      marginal_dev = std::max(marginal_dev, std::abs(gc::to_double(diff)));
    }
  }
  checks.push_back({"output_rank_law", marginal_exact, marginal_dev, 0});

  double hr_dev = 0.0;
  double spread = 0.0;
  std::vector<double> first(static_cast<std::size_t>(k) + 1, -1.0);
  for (std::size_t x = 0; x < table.size(); ++x) {
    const auto r = static_cast<std::size_t>(table.rank[x]);
    const double h = gc::oracle::row_entropy(table, x);
    if (first[r] < 0) {
      first[r] = h;
      hr_dev = std::max(hr_dev, std::abs(h - channel.h_r(static_cast<int>(r))));
    }
    spread = std::max(spread, std::abs(h - first[r]));
  }
  checks.push_back({"h_r", hr_dev <= 1e-10, hr_dev, 1e-10});
  checks.push_back({"rank_only_entropy", spread <= 1e-12, spread, 1e-12});

  gc::SolverConfig cfg;
  cfg.tolerance_bits = o.tol;
  cfg.max_iterations = o.max_iters;
  const gc::CapacityResult res = gc::maximize(channel, cfg);
  const auto ba = gc::oracle::blahut_arimoto(table, std::min(o.tol, 1e-9));
  const double cap_dev = std::abs(res.capacity_bits - ba.capacity_bits);
  checks.push_back({"capacity_vs_blahut_arimoto", res.converged && cap_dev <= 1e-6, cap_dev, 1e-6});
  double ugr = 0.0;
  std::vector<double> mass(static_cast<std::size_t>(k) + 1, -1.0);
  for (std::size_t x = 0; x < table.size(); ++x) {
    auto& ref = mass[static_cast<std::size_t>(table.rank[x])];
    if (ref < 0) ref = ba.input[x];
    ugr = std::max(ugr, std::abs(ba.input[x] - ref));
  }
  checks.push_back({"blahut_arimoto_input_ugr", ugr <= 1e-4, ugr, 1e-4});

  bool all = true;
  Json arr = Json::array();
  rep.csv_header = {"check", "status", "max_deviation", "threshold"};
  for (const auto& c : checks) {
    all = all && c.passed;
    arr.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"max_deviation", c.deviation}, {"threshold", c.threshold}});
    rep.csv_rows.push_back({c.name, c.passed ? "PASS" : "FAIL", fmt_double(c.deviation), fmt_double(c.threshold)});
    rep.text.push_back((c.passed ? "PASS  " : "FAIL  ") + c.name + "  max_dev=" + fmt_double(c.deviation) +
                       "  threshold=" + fmt_double(c.threshold));
  }
  rep.result = Json{{"passed", all},
                    {"checks", arr},
                    {"capacity_bits", res.capacity_bits},
                    {"oracle_capacity_bits", ba.capacity_bits}};
  rep.diagnostics["status"] = all ? "ok" : "verification_failed";
  rep.text.push_back(all ? "PASS" : "FAIL");
  return all ? kOk : kVerifyFailed;
}

std::string render(const Report& rep, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    Json doc{{"command", rep.command}, {"params", rep.params}, {"result", rep.result}, {"diagnostics", rep.diagnostics}};
    os << doc.dump(2) << "\n";
  } else if (format == "csv") {
    for (std::size_t i = 0; i < rep.csv_header.size(); ++i) os << (i ? "," : "") << rep.csv_header[i];
    os << "\n";
    for (const auto& row : rep.csv_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
      os << "\n";
    }
  } else {
    for (const auto& line : rep.text) os << line << "\n";
  }
  return os.str();
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("gamma");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("GAMMA_LOG_LEVEL")) spdlog::set_level(spdlog::level::from_str(env));
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Capacity and counting tools for Gamma matrix channels"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* sub, bool channel) {
    sub->add_option("--q", o.q, "field order (prime power)")->capture_default_str();
    sub->add_option("--n", o.n, "rows of the transmitted matrix")->capture_default_str();
    sub->add_option("--m", o.m, "columns of the transmitted matrix")->capture_default_str();
    if (channel) sub->add_option("--error", o.error, "error model: constant:t=.., iid:t=.., binomial:T=..,p=.., empirical:p0,p1,..")->capture_default_str();
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv", "text"}))->capture_default_str();
    sub->add_option("--out", o.out, "write the report to this file");
  };
  const auto solver = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "optimality tolerance in bits")->capture_default_str();
    sub->add_option("--max-iters", o.max_iters, "iteration limit")->capture_default_str();
  };

  CLI::App* capacity = app.add_subcommand("capacity", "channel capacity over UGR inputs");
  common(capacity, true);
  solver(capacity);
  CLI::App* matrixfn = app.add_subcommand("matrixfn", "evaluate f0, f1 or f2");
  matrixfn->set_help_flag("--help", "print this help message and exit");
  common(matrixfn, false);
  matrixfn->add_option("function", o.function, "f0, f1 or f2")->required()->check(CLI::IsMember({"f0", "f1", "f2"}));
  matrixfn->add_option("--u", o.u, "dimension of row(M)");
  matrixfn->add_option("--v", o.v, "dimension of V");
  matrixfn->add_option("--h", o.h, "dim((U + V) / V)");
  matrixfn->add_option("--r", o.r, "rank r");
  matrixfn->add_option("--rx", o.rx, "rank of X");
  matrixfn->add_option("--rb", o.rb, "rank of B");
  CLI::App* ranks = app.add_subcommand("ranks", "output rank distribution for a UGR input");
  common(ranks, true);
  ranks->add_option("--input", o.input, "input rank distribution p0,p1,... or 'uniform'");
  CLI::App* errormodel = app.add_subcommand("errormodel", "show an error rank distribution");
  common(errormodel, true);
  CLI::App* verify = app.add_subcommand("verify", "cross-check against brute-force enumeration");
  common(verify, true);
  solver(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    diagnostic("usage", kBadInput, e.what());
    return kBadInput;
  }

  Report rep;
  int code = kOk;
  try {
    if (*capacity) {
      rep.command = "capacity";
      code = cmd_capacity(o, rep);
    } else if (*matrixfn) {
      rep.command = "matrixfn";
      code = cmd_matrixfn(o, rep);
    } else if (*ranks) {
      rep.command = "ranks";
      code = cmd_ranks(o, rep);
    } else if (*errormodel) {
      rep.command = "errormodel";
      code = cmd_errormodel(o, rep);
    } else {
      rep.command = "verify";
      code = cmd_verify(o, rep);
    }
  } catch (const gc::InputError& e) {
    diagnostic("input", kBadInput, e.what());
    return kBadInput;
  } catch (const gc::BudgetError& e) {
    diagnostic("budget", kBudget, e.what());
    return kBudget;
  } catch (const std::exception& e) {
    diagnostic("internal", kBadInput, e.what());
    return kBadInput;
  }

  const std::string text = render(rep, o.format);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(o.out);
    if (!file) {
      diagnostic("io", kBadInput, "cannot open output file " + o.out);
      return kBadInput;
    }
    file << text;
  }
  if (code == kNotConverged) diagnostic("not_converged", code, "solver stopped before reaching the tolerance");
  if (code == kVerifyFailed) diagnostic("verification", code, "one or more oracle checks failed");
  return code;
}
