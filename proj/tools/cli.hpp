#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pcm/pcm.hpp"

namespace pcm::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kIrreducibility = 3,
  kMethodMismatch = 4,
  kConfig = 5,
};

namespace detail {

inline std::string fmt(double v) {
  if (v == 0.0) v = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline PCMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error::at_line("cannot open '" + path + "'", 0);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_matrix(text);
}

inline int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NotIrreducible:
    case ErrorCode::ReducibleInput: return kIrreducibility;
    case ErrorCode::NotComplete: return kMethodMismatch;
    case ErrorCode::BadConfig:
    case ErrorCode::BadParams:
    case ErrorCode::BadK: return kConfig;
    case ErrorCode::NonSquare:
    case ErrorCode::BadSize:
    case ErrorCode::BadDiagonal:
    case ErrorCode::ReciprocityViolation:
    case ErrorCode::NonPositiveEntry:
    case ErrorCode::SyntaxError: return kParse;
    default: return kUsage;
  }
}

inline std::vector<IndexId> parse_index_list(const std::string& list) {
  std::vector<IndexId> out;
  if (list.empty() || list == "all") return {kAllIndices.begin(), kAllIndices.end()};
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto id = index_from_name(item);
    if (!id) throw Error(ErrorCode::BadParams, "unknown index '" + item + "'");
    out.push_back(*id);
  }
  return out;
}

struct AnalyzeOptions {
  std::string file;
  std::string indices = "all";
  BlendParams blend{};
  bool json = false;
};

inline int analyze(const AnalyzeOptions& opt, std::ostream& out) {
  const PCMatrix m = load_matrix(opt.file);
  opt.blend.check();
  const auto ids = parse_index_list(opt.indices);
  IndexSet which;
  for (IndexId id : ids) include(which, id);

  const auto values = evaluate(m, opt.blend, which);
  const bool complete = is_complete(m);
  const std::size_t defined = defined_pairs(m).size();

  std::optional<ClassicalValues> classical;
  if (complete) classical = classical_indices(m, opt.blend);

  // Incomplete-capable index minus its classical counterpart.
  const std::pair<IndexId, ClassicalId> reductions[] = {
      {IndexId::CI, ClassicalId::CI},   {IndexId::GCI1, ClassicalId::GCI},
      {IndexId::GW, ClassicalId::GW},   {IndexId::RE1, ClassicalId::RE},
      {IndexId::RE2, ClassicalId::RE},
  };

  if (opt.json) {
    nlohmann::ordered_json j;
    j["n"] = m.size();
    j["complete"] = complete;
    j["comparisons"] = defined;
    j["exceeds_scale"] = m.exceeds_scale();
    auto& idx = j["indices"] = nlohmann::ordered_json::object();
    for (IndexId id : ids) idx[std::string(name(id))] = values[id];
    if (classical) {
      auto& cl = j["classical"] = nlohmann::ordered_json::object();
      for (ClassicalId id : kAllClassical) cl[std::string(name(id))] = (*classical)[id];
      auto& red = j["reductions"] = nlohmann::ordered_json::object();
      for (auto [inc, cls] : reductions) {
        if (contains(which, inc)) {
          red[std::string(name(inc)) + "-" + std::string(name(cls))] =
              values[inc] - (*classical)[cls];
        }
      }
    }
    out << j.dump(2) << '\n';
    return kOk;
  }

  out << "matrix: " << m.size() << "x" << m.size() << ", " << defined << " of "
      << m.size() * (m.size() - 1) / 2 << " comparisons"
      << (complete ? " (complete)" : " (incomplete)") << '\n';
  if (m.exceeds_scale()) out << "warning: some entries lie outside [1/" << fmt(m.scale()) << ", "
                             << fmt(m.scale()) << "]\n";
  out << "\nindices\n";
  for (IndexId id : ids) {
    char line[96];
    std::snprintf(line, sizeof line, "  %-12s %s\n", std::string(name(id)).c_str(),
                  fmt(values[id]).c_str());
    out << line;
  }
  if (classical) {
    out << "\nclassical reference\n";
    for (ClassicalId id : kAllClassical) {
      char line[96];
      std::snprintf(line, sizeof line, "  %-12s %s\n", std::string(name(id)).c_str(),
                    fmt((*classical)[id]).c_str());
      out << line;
    }
    out << "\nreductions\n";
    for (auto [inc, cls] : reductions) {
      if (!contains(which, inc)) continue;
      char line[96];
      const std::string label = std::string(name(inc)) + " - " + std::string(name(cls));
      std::snprintf(line, sizeof line, "  %-12s %s\n", label.c_str(),
                    fmt(values[inc] - (*classical)[cls]).c_str());
      out << line;
    }
  }
  return kOk;
}

struct RankOptions {
  std::string file;
  std::string method = "ills";
  bool json = false;
};

inline int rank(const RankOptions& opt, std::ostream& out) {
  const PCMatrix m = load_matrix(opt.file);
  PriorityVector w;
  std::optional<double> lambda;
  if (opt.method == "evm") {
    w = evm(m);
  } else if (opt.method == "gmm") {
    w = gmm(m);
  } else if (opt.method == "harker") {
    auto r = harker_rank(m);
    lambda = r.value;
    w = PriorityVector(std::move(r.vector));
  } else if (opt.method == "ills") {
    w = ills(m);
  } else {
    throw Error(ErrorCode::BadParams, "unknown method '" + opt.method + "'");
  }

  std::vector<std::size_t> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] > w[b]; });

  if (opt.json) {
    nlohmann::ordered_json j;
    j["method"] = opt.method;
    if (lambda) j["lambda_max"] = *lambda;
    auto& arr = j["ranking"] = nlohmann::ordered_json::array();
    for (std::size_t i : order) {
      arr.push_back({{"alternative", "a" + std::to_string(i + 1)}, {"weight", w[i]}});
    }
    out << j.dump(2) << '\n';
    return kOk;
  }
  out << "method: " << opt.method << '\n';
  if (lambda) out << "lambda_max: " << fmt(*lambda) << '\n';
  std::size_t pos = 1;
  for (std::size_t i : order) {
    char line[96];
    std::snprintf(line, sizeof line, "%3zu. a%-4zu %s\n", pos++, i + 1, fmt(w[i]).c_str());
    out << line;
  }
  return kOk;
}

struct ExperimentOptions {
  ExperimentConfig cfg{};
  std::string gamma = "uniform";
  std::string out_prefix;
};

inline int experiment(ExperimentOptions opt, std::ostream& out) {
  if (opt.gamma == "uniform") {
    opt.cfg.gamma = GammaDistribution::Uniform;
  } else if (opt.gamma == "loguniform") {
    opt.cfg.gamma = GammaDistribution::LogUniform;
  } else {
    throw Error(ErrorCode::BadConfig, "unknown gamma distribution '" + opt.gamma + "'");
  }
  opt.cfg.check();
  const DistanceTable table = run_experiment(opt.cfg);

  const std::string dist_path = opt.out_prefix + "_distances.csv";
  const std::string sum_path = opt.out_prefix + "_summary.csv";
  std::ofstream dist(dist_path);
  std::ofstream sum(sum_path);
  if (!dist || !sum) throw Error(ErrorCode::BadConfig, "cannot write to prefix '" + opt.out_prefix + "'");
  write_distance_csv(dist, table);
  write_summary_csv(sum, table);

  out << "wrote " << dist_path << " and " << sum_path << "\n\n";
  out << "pos  index        total\n";
  std::size_t pos = 1;
  for (auto [id, total] : ranking(table)) {
    char line[96];
    std::snprintf(line, sizeof line, "%3zu. %-12s %s\n", pos++, std::string(name(id)).c_str(),
                  format_g6(total).c_str());
    out << line;
  }
  return kOk;
}

}  // namespace detail

/// Entry point shared by the executable and the tests. `args[0]` is the
/// program name.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Inconsistency indices and rankings for pairwise comparison matrices"};
  app.require_subcommand(1);

  detail::AnalyzeOptions an;
  auto* analyze = app.add_subcommand("analyze", "Evaluate inconsistency indices of a matrix file");
  analyze->add_option("file", an.file, "Matrix file")->required();
  analyze->add_option("--indices", an.indices, "Comma separated index names, or 'all'");
  analyze->add_option("--alpha", an.blend.alpha, "alpha of the alpha-index");
  analyze->add_option("--beta", an.blend.beta, "beta of the alpha,beta-index");
  analyze->add_option("--ab-alpha", an.blend.ab_alpha, "alpha of the alpha,beta-index");
  analyze->add_flag("--json", an.json, "Emit JSON");

  detail::RankOptions rk;
  auto* rank = app.add_subcommand("rank", "Derive a priority vector");
  rank->add_option("file", rk.file, "Matrix file")->required();
  rank->add_option("--method", rk.method, "evm | gmm | harker | ills")->required();
  rank->add_flag("--json", rk.json, "Emit JSON");

  detail::ExperimentOptions ex;
  ExperimentConfig& cfg = ex.cfg;
  std::size_t n = cfg.n;
  auto* experiment = app.add_subcommand("experiment", "Run the incompleteness robustness experiment");
  experiment->add_option("--n", n, "Matrix size");
  experiment->add_option("--matrices", cfg.base_matrices, "Number of consistent base matrices");
  experiment->add_option("--dmax", cfg.d_max, "Largest disturbance level");
  experiment->add_option("--removals", cfg.removals_max, "Largest number of removed comparisons");
  experiment->add_option("--seed", cfg.seed, "Random seed");
  experiment->add_option("--threads", cfg.threads, "Worker threads");
  experiment->add_option("--alpha", cfg.blend.alpha, "alpha of the alpha-index");
  experiment->add_option("--beta", cfg.blend.beta, "beta of the alpha,beta-index");
  experiment->add_option("--ab-alpha", cfg.blend.ab_alpha, "alpha of the alpha,beta-index");
  experiment->add_option("--weight-range", cfg.weight_range, "Hidden weights lie in [1/r, r]");
  experiment->add_option("--gamma-dist", ex.gamma, "uniform | loguniform");
  experiment->add_flag("--independent-removals", cfg.independent_removals,
                       "Draw each sample from the complete matrix");
  experiment->add_option("--out", ex.out_prefix, "Output file prefix")->required();

  std::vector<std::string> rev(args.rbegin(), std::prev(args.rend()));
  try {
    app.parse(std::move(rev));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*analyze) return detail::analyze(an, out);
    if (*rank) return detail::rank(rk, out);
    cfg.n = n;
    return detail::experiment(ex, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return detail::exit_code_for(e);
  }
}

}  // namespace pcm::cli
