// Copyright 2026 The lolab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <thread>

#include <fmt/format.h>
#include "json.hpp"

#include "errors.hpp"
#include "heuristics.hpp"

namespace lolab {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kInstanceStream = 0x696e7374616e6365ULL;  // "instance"

std::string per_level_field(const RunRecord& r) {
  std::string s;
  for (const auto& [level, count] : r.per_level) {
    if (!s.empty()) s += ';';
    s += fmt::format("{}:{}", level, count);
  }
  return s;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::size_t parse_size(std::string_view s, std::string_view what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InputError(fmt::format("bad {} '{}'", what, s));
  return v;
}

}  // namespace

OutputFormat parse_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw InputError(fmt::format("unknown format '{}'", text));
}

void ExperimentConfig::validate() const {
  make_strategy(algorithm);  // throws UnknownAlgorithm
  if (n_values.empty()) throw InputError("no n values");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] == 0) throw InputError("n must be positive");
    if (i > 0 && n_values[i] <= n_values[i - 1])
      throw InputError("n values must be strictly increasing");
  }
  if (repetitions == 0) throw InputError("repetitions must be at least 1");
  if (budget == 0) throw InputError("budget must be positive");
  if (threads == 0) throw InputError("threads must be at least 1");
  if (fixed_instance) {
    for (std::size_t n : n_values)
      if (n != fixed_instance->n())
        throw InputError("fixed instance size does not match n");
  }
}

std::uint64_t repetition_seed(std::uint64_t master, std::size_t n,
                              std::size_t rep) {
  return derive_seed(master, n, rep);
}

LoInstance repetition_instance(std::uint64_t rep_seed, std::size_t n) {
  Rng rng(derive_seed(rep_seed, kInstanceStream, n));
  return random_instance(n, rng);
}

RunRecord run_repetition(const ExperimentConfig& config, std::size_t n,
                         std::size_t rep) {
  const std::uint64_t seed = repetition_seed(config.master_seed, n, rep);
  auto strategy = make_strategy(config.algorithm);
  RunOptions options;
  options.budget = config.budget;
  if (config.fixed_instance)
    return run_one_plus_one(*strategy, *config.fixed_instance, seed, options);
  return run_one_plus_one(*strategy, repetition_instance(seed, n), seed,
                          options);
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const std::size_t per_n = config.repetitions;
  const std::size_t total = per_n * config.n_values.size();
  std::vector<RunRecord> records(total);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) return;
      try {
        records[i] = run_repetition(config, config.n_values[i / per_n], i % per_n);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = total;
        return;
      }
    }
  };
  const unsigned count =
      static_cast<unsigned>(std::min<std::size_t>(config.threads, total));
  if (count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

void write_records(std::ostream& out, const std::vector<RunRecord>& records,
                   OutputFormat format) {
  if (format == OutputFormat::Csv) {
    out << kSchemaLine << '\n'
        << "algo,n,seed,total_queries,hit_optimum,budget_exhausted,per_level\n";
    for (const RunRecord& r : records) {
      out << fmt::format("{},{},{},{},{},{},{}\n", r.algo, r.n, r.seed,
                         r.total_queries, r.hit_optimum, r.budget_exhausted,
                         per_level_field(r));
    }
    return;
  }
  for (const RunRecord& r : records) {
    ordered_json j;
    j["algo"] = r.algo;
    j["n"] = r.n;
    j["seed"] = r.seed;
    j["total_queries"] = r.total_queries;
    j["hit_optimum"] = r.hit_optimum;
    j["budget_exhausted"] = r.budget_exhausted;
    ordered_json levels = ordered_json::array();
    for (const auto& [level, count] : r.per_level)
      levels.push_back(ordered_json::array({level, count}));
    j["per_level"] = std::move(levels);
    out << j.dump() << '\n';
  }
}

PowerFit fit_power_law(const std::vector<double>& x,
                       const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw InputError("power fit needs at least two matching points");
  const double k = double(x.size());
  double sx = 0, sy = 0;
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0))
      throw InputError("power fit needs positive data");
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
    sx += lx.back();
    sy += ly.back();
  }
  const double mx = sx / k, my = sy / k;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0) throw InputError("power fit needs distinct x values");
  PowerFit fit;
  fit.exponent = sxy / sxx;
  fit.coefficient = std::exp(my - fit.exponent * mx);
  fit.r2 = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

ScalingReport summarize_scaling(const ExperimentConfig& config,
                                const std::vector<RunRecord>& records) {
  if (config.n_values.size() < 3) throw InputError("scaling needs >= 3 n values");
  if (config.repetitions < 50) throw InputError("scaling needs >= 50 repetitions");

  ScalingReport report;
  report.algorithm = config.algorithm;
  std::vector<double> ns, means, per_n, logs;
  for (std::size_t n : config.n_values) {
    ScalingRow row;
    row.n = n;
    double sum = 0;
    std::vector<double> values;
    for (const RunRecord& r : records) {
      if (r.n != n) continue;
      values.push_back(double(r.total_queries));
      sum += values.back();
    }
    if (values.size() < 2) throw InputError("missing runs for some n");
    row.runs = values.size();
    row.mean = sum / double(row.runs);
    double ss = 0;
    for (double v : values) ss += (v - row.mean) * (v - row.mean);
    row.std_error = std::sqrt(ss / double(row.runs - 1) / double(row.runs));
    row.ci95 = 1.96 * row.std_error;
    const double nd = double(n);
    row.per_n2 = row.mean / (nd * nd);
    row.per_nlogn = n > 1 ? row.mean / (nd * std::log2(nd)) : 0.0;
    report.rows.push_back(row);
    ns.push_back(nd);
    means.push_back(row.mean);
    per_n.push_back(row.mean / nd);
    logs.push_back(std::log2(nd));
  }
  report.fit = fit_power_law(ns, means);
  if (config.n_values.front() > 1) {
    report.log_fit = fit_power_law(logs, per_n);
    double acc = 0;
    for (const auto& row : report.rows) acc += row.per_nlogn;
    report.mean_per_nlogn = acc / double(report.rows.size());
  }
  return report;
}

ScalingReport run_scaling(const ExperimentConfig& config) {
  config.validate();
  if (config.n_values.size() < 3) throw InputError("scaling needs >= 3 n values");
  if (config.repetitions < 50) throw InputError("scaling needs >= 50 repetitions");
  return summarize_scaling(config, run_experiment(config));
}

void write_scaling(std::ostream& out, const ScalingReport& report,
                   OutputFormat format) {
  if (format == OutputFormat::Csv) {
    out << kSchemaLine << '\n'
        << fmt::format("# algo={} alpha={} c={} r2={} log_exponent={} "
                       "log_c={} mean_per_nlogn={}\n",
                       report.algorithm, format_real(report.fit.exponent),
                       format_real(report.fit.coefficient),
                       format_real(report.fit.r2),
                       format_real(report.log_fit.exponent),
                       format_real(report.log_fit.coefficient),
                       format_real(report.mean_per_nlogn))
        << "n,runs,mean,std_error,ci95,mean_over_n2,mean_over_nlog2n\n";
    for (const auto& r : report.rows) {
      out << fmt::format("{},{},{},{},{},{},{}\n", r.n, r.runs,
                         format_real(r.mean), format_real(r.std_error),
                         format_real(r.ci95), format_real(r.per_n2),
                         format_real(r.per_nlogn));
    }
    return;
  }
  ordered_json j;
  j["algo"] = report.algorithm;
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"runs", r.runs},
                    {"mean", r.mean},
                    {"std_error", r.std_error},
                    {"ci95", r.ci95},
                    {"mean_over_n2", r.per_n2},
                    {"mean_over_nlog2n", r.per_nlogn}});
  }
  j["rows"] = std::move(rows);
  j["fit"] = {{"alpha", report.fit.exponent},
              {"c", report.fit.coefficient},
              {"r2", report.fit.r2}};
  j["log_fit"] = {{"exponent", report.log_fit.exponent},
                  {"c", report.log_fit.coefficient},
                  {"r2", report.log_fit.r2}};
  j["mean_over_nlog2n"] = report.mean_per_nlogn;
  out << j.dump(2) << '\n';
}

std::vector<LevelStat> summarize_levels(const std::vector<RunRecord>& records,
                                        std::size_t n) {
  std::map<int, std::pair<std::size_t, std::uint64_t>> acc;  // runs, queries
  std::size_t runs = 0;
  for (const RunRecord& r : records) {
    if (r.n != n) continue;
    ++runs;
    for (const auto& [level, count] : r.per_level) {
      auto& a = acc[level];
      ++a.first;
      a.second += count;
    }
  }
  if (runs == 0) throw InputError("no runs for level profile");
  std::vector<LevelStat> stats;
  for (const auto& [level, a] : acc) {
    LevelStat s;
    s.level = level;
    s.runs_visited = a.first;
    s.visit_frequency = double(a.first) / double(runs);
    s.mean_when_visited = double(a.second) / double(a.first);
    stats.push_back(s);
  }
  return stats;
}

std::vector<LevelStat> run_level_profile(const ExperimentConfig& config) {
  config.validate();
  if (config.n_values.size() != 1)
    throw InputError("level profile needs exactly one n");
  if (config.repetitions < 100)
    throw InputError("level profile needs >= 100 repetitions");
  return summarize_levels(run_experiment(config), config.n_values.front());
}

void write_level_profile(std::ostream& out, const std::vector<LevelStat>& stats) {
  out << kSchemaLine << '\n'
      << "level,runs_visited,visit_frequency,mean_when_visited\n";
  for (const auto& s : stats) {
    out << fmt::format("{},{},{},{}\n", s.level, s.runs_visited,
                       format_real(s.visit_frequency),
                       format_real(s.mean_when_visited));
  }
}

void write_phi_csv(std::ostream& out, std::size_t k_max, std::size_t m_max,
                   double eps) {
  if (m_max == 0) throw InputError("phi needs m_max >= 1");
  if (k_max + m_max > PhiTable::kMaxTotal)
    throw InputError("phi needs kmax + mmax <= 24");
  if (!(eps > 0)) throw InputError("eps must be positive");
  PhiTable table;
  out << kSchemaLine << '\n' << "k,m,C,B,phi_hat,closed_form,slack\n";
  for (std::size_t k = 0; k <= k_max; ++k) {
    for (std::size_t m = 1; m <= m_max; ++m) {
      const std::uint64_t top = binomial(k + m, m);
      for (std::uint64_t c = 1; c <= top; ++c) {
        const double b = available_information(k, m, c);
        const double phi = table.value(k, m, c);
        const double closed = phi_closed_form(k, m, b, eps);
        out << fmt::format("{},{},{},{},{},{},{}\n", k, m, c, format_real(b),
                           format_real(phi), format_real(closed),
                           format_real(phi - closed));
      }
    }
  }
}

void write_verify_json(std::ostream& out, const InductionReport& report) {
  ordered_json j;
  j["eps"] = report.eps;
  j["pass"] = report.pass;
  j["max_r"] = report.evaluated ? report.max_r : 0.0;
  j["evaluated"] = report.evaluated;
  j["skipped"] = report.skipped;
  ordered_json cells = ordered_json::array();
  for (const auto& c : report.cells) {
    ordered_json cell;
    cell["k"] = c.k;
    cell["m"] = c.m;
    cell["log2_b"] = c.log_b;
    if (c.skipped) {
      cell["skipped"] = true;
      cell["reason"] = c.note;
    } else {
      cell["p_min"] = c.p_min;
      cell["p_max"] = c.p_max;
      cell["max_r"] = c.max_r;
      cell["argmax_p"] = c.argmax_p;
    }
    cells.push_back(std::move(cell));
  }
  j["cells"] = std::move(cells);
  out << j.dump() << '\n';
}

SetFamily parse_game_spec(std::string_view text) {
  std::optional<std::size_t> n, k;
  bool all = false;
  std::vector<std::vector<std::size_t>> sets;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos)
      throw InputError(fmt::format("game spec line {}: expected key=value", line_no));
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key == "n") {
      n = parse_size(value, "n");
    } else if (key == "k") {
      k = parse_size(value, "k");
    } else if (key == "family") {
      if (value != "all")
        throw InputError(fmt::format("game spec line {}: family must be 'all'", line_no));
      all = true;
    } else if (key == "set") {
      std::vector<std::size_t> s;
      std::string_view rest = value;
      while (!rest.empty()) {
        const std::size_t sp = rest.find_first_of(" \t,");
        const std::string_view tok = rest.substr(0, sp);
        rest = sp == std::string_view::npos ? std::string_view{} : trim(rest.substr(sp + 1));
        if (tok.empty()) continue;
        const std::size_t pos = parse_size(tok, "position");
        if (pos == 0) throw InputError("set positions are 1-based");
        s.push_back(pos - 1);
      }
      sets.push_back(std::move(s));
    } else {
      throw InputError(fmt::format("game spec line {}: unknown key '{}'", line_no, key));
    }
  }
  if (!n || !k) throw InputError("game spec needs n= and k=");
  if (all && !sets.empty())
    throw InputError("game spec mixes family=all with set= lines");
  if (all) return full_family(*n, *k);
  return make_family(*n, *k, sets);
}

std::string format_real(double value) {
  std::string s = fmt::format("{}", value);
  if (std::isfinite(value) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

}  // namespace lolab
