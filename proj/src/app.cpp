#include "thinter/app.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "thinter/runner.hpp"

namespace thinter {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto* first = value.data();
  const auto* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError("invalid value '" + value + "' for " + key);
  return out;
}

std::string unescape(const std::string& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != '\\' || i + 1 == s.size()) {
      out += s[i];
      continue;
    }
    switch (s[++i]) {
      case 'n':
        out += '\n';
        break;
      case 't':
        out += '\t';
        break;
      case 's':
        out += ' ';
        break;
      default:
        out += s[i];
    }
  }
  return out;
}

std::optional<std::int64_t> parse_limit(const std::string& key, const std::string& value) {
  if (value == "all" || value == "none" || value.empty()) return std::nullopt;
  const auto n = parse_number<std::int64_t>(key, value);
  if (n < 0) throw ConfigError(key + " must be >= 0");
  return n;
}

using Setter = std::function<void(AppConfig&, const std::string&, const std::string&)>;

template <typename T>
Setter number(T AppConfig::*member) {
  return [member](AppConfig& c, const std::string& k, const std::string& v) {
    c.*member = parse_number<T>(k, v);
  };
}

template <typename T>
Setter scoring(T ScoringConfig::*member) {
  return [member](AppConfig& c, const std::string& k, const std::string& v) {
    c.scoring.*member = parse_number<T>(k, v);
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"fuzz.coverage_target",
       [](AppConfig& c, const std::string& k, const std::string& v) {
         c.fuzz.coverage_target = parse_number<double>(k, v);
       }},
      {"fuzz.time_budget_s",
       [](AppConfig& c, const std::string& k, const std::string& v) {
         c.fuzz.time_budget = std::chrono::milliseconds(
             static_cast<std::int64_t>(parse_number<double>(k, v) * 1000.0));
       }},
      {"fuzz.max_cases",
       [](AppConfig& c, const std::string& k, const std::string& v) {
         c.fuzz.max_cases = parse_number<std::int64_t>(k, v);
       }},
      {"fuzz.rng_seed",
       [](AppConfig& c, const std::string& k, const std::string& v) {
         c.fuzz.rng_seed = parse_number<std::uint64_t>(k, v);
       }},
      {"fuzz.allowed_characters",
       [](AppConfig& c, const std::string&, const std::string& v) {
         c.fuzz.filter = FilterConfig::from_characters(unescape(v));
       }},
      {"scoring.base_score", scoring(&ScoringConfig::base_score)},
      {"scoring.theta_h1", scoring(&ScoringConfig::theta_h1)},
      {"scoring.theta_h2", scoring(&ScoringConfig::theta_h2)},
      {"scoring.theta_low", scoring(&ScoringConfig::theta_low)},
      {"scoring.alpha_base", scoring(&ScoringConfig::alpha_base)},
      {"scoring.alpha_cf", scoring(&ScoringConfig::alpha_cf)},
      {"scoring.alpha_hdr", scoring(&ScoringConfig::alpha_hdr)},
      {"scoring.alpha_simple", scoring(&ScoringConfig::alpha_simple)},
      {"scoring.flag_threshold", scoring(&ScoringConfig::flag_threshold)},
      {"scoring.anomaly_sigma", scoring(&ScoringConfig::anomaly_sigma)},
      {"runner.timeout_s", number(&AppConfig::runner_timeout_s)},
      {"runner.normalization",
       [](AppConfig& c, const std::string&, const std::string& v) {
         c.normalization = parse_normalization(v);
       }},
      {"run.language_profile",
       [](AppConfig& c, const std::string&, const std::string& v) {
         c.language_profile_id = v;
       }},
      {"run.profiles_file",
       [](AppConfig& c, const std::string&, const std::string& v) { c.profiles_file = v; }},
      {"run.exec_limit",
       [](AppConfig& c, const std::string& k, const std::string& v) {
         c.exec_limit = parse_limit(k, v);
       }},
      {"run.workers", number(&AppConfig::workers)},
      {"bench.budgets",
       [](AppConfig& c, const std::string& k, const std::string& v) {
         c.budgets.clear();
         std::stringstream ss(v);
         std::string item;
         while (std::getline(ss, item, ',')) {
           while (!item.empty() && item.front() == ' ') item.erase(item.begin());
           while (!item.empty() && item.back() == ' ') item.pop_back();
           c.budgets.push_back(parse_limit(k, item));
         }
       }},
      {"paths.corpus",
       [](AppConfig& c, const std::string&, const std::string& v) { c.corpus_dir = v; }},
      {"paths.log",
       [](AppConfig& c, const std::string&, const std::string& v) { c.log_file = v; }},
      {"paths.report",
       [](AppConfig& c, const std::string&, const std::string& v) { c.report_file = v; }},
      {"paths.summary",
       [](AppConfig& c, const std::string&, const std::string& v) { c.summary_file = v; }},
  };
  return table;
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read translated source " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

void ensure_parent(const fs::path& file) {
  if (file.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(file.parent_path(), ec);
  }
}

void write_file(const fs::path& path, const std::string& content) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw Error("cannot write " + path.string());
}

ProfileRegistry make_profiles(const AppConfig& cfg) {
  ProfileRegistry reg;
  if (cfg.profiles_file) reg.load_file(*cfg.profiles_file);
  return reg;
}

FuzzConfig fuzz_config(const AppConfig& cfg) {
  auto f = cfg.fuzz;
  f.workers = cfg.workers;
  return f;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const NoUsableRecords&) {
    err << "error: no usable records\n";
  } catch (const AllSeedsInvalid&) {
    err << "error: all seeds invalid\n";
  } catch (const CoverageUnavailable& e) {
    err << "error: " << e.what() << "\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace

void AppConfig::validate() const {
  fuzz.validate();
  scoring.validate();
  if (!(runner_timeout_s > 0)) throw ConfigError("runner.timeout_s must be positive");
  if (workers < 1) throw ConfigError("run.workers must be >= 1");
  if (budgets.empty()) throw ConfigError("bench.budgets must not be empty");
}

void AppConfig::set(const std::string& key, const std::string& value) {
  const auto it = setters().find(key);
  if (it == setters().end()) throw ConfigError("unknown config key '" + key + "'");
  it->second(*this, key, value);
}

void AppConfig::apply_override(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ConfigError("expected key=value, got '" + assignment + "'");
  set(assignment.substr(0, eq), assignment.substr(eq + 1));
}

void AppConfig::load_file(const fs::path& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("cannot read config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      set(section, body.data());
      continue;
    }
    for (const auto& [key, value] : body) set(section + "." + key, value.data());
  }
  // Relative paths inside the file are relative to the file.
  const auto base = path.parent_path();
  if (profiles_file && profiles_file->is_relative()) profiles_file = base / *profiles_file;
}

PairSpec parse_pair(const json& j, const fs::path& base_dir, const AppConfig& cfg) {
  try {
    PairSpec spec;
    auto& pair = spec.pair;
    pair.pair_id = j.at("pair_id").get<std::string>();
    const double timeout = j.value("timeout_s", cfg.runner_timeout_s);
    const auto norm = j.contains("normalization")
                          ? parse_normalization(j["normalization"].get<std::string>())
                          : cfg.normalization;
    pair.source_runner = {j.at("source_cmd").get<std::string>(), std::nullopt, timeout, norm};
    pair.translated_runner = {j.at("translated_cmd").get<std::string>(), std::nullopt, timeout,
                              norm};
    if (j.contains("coverage_cmd") && !j["coverage_cmd"].is_null())
      pair.translated_runner.coverage_command_template = j["coverage_cmd"].get<std::string>();
    pair.language_profile_id = j.value("language_profile", cfg.language_profile_id);
    spec.translated_source = resolve(base_dir, j.at("translated_source").get<std::string>());
    pair.translated_text = read_lines(spec.translated_source);
    spec.seeds_dir = resolve(base_dir, j.value("seeds_dir", std::string("seeds")));
    if (j.contains("buggy_lines"))
      spec.buggy_lines = j["buggy_lines"].get<std::set<LineNo>>();
    if (j.contains("complexity_inputs")) {
      const auto& c = j["complexity_inputs"];
      ComplexityInputs in;
      in.s_difficulty = c.at("s_difficulty").get<double>();
      in.r_accept = c.at("r_accept").get<double>();
      in.c_cyc = c.contains("c_cyc") ? c["c_cyc"].get<double>()
                                     : estimate_cyclomatic(pair.translated_text,
                                                           make_profiles(cfg).get(
                                                               pair.language_profile_id));
      in.validate();
      spec.complexity = in;
    }
    pair.validate();
    return spec;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad pair manifest: ") + e.what());
  }
}

namespace {
json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read manifest " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed manifest " + path.string() + ": " + e.what());
  }
}
}  // namespace

PairSpec load_pair_manifest(const fs::path& path, const AppConfig& cfg) {
  return parse_pair(read_json(path), fs::absolute(path).parent_path(), cfg);
}

std::vector<PairSpec> load_corpus_manifest(const fs::path& path, const AppConfig& cfg) {
  const auto doc = read_json(path);
  const auto base = fs::absolute(path).parent_path();
  const auto& list = doc.is_array() ? doc : doc.at("pairs");
  std::vector<PairSpec> out;
  for (const auto& item : list) out.push_back(parse_pair(item, base, cfg));
  return out;
}

fs::path text_report_path(const fs::path& json_report) {
  auto p = json_report;
  p.replace_extension(".txt");
  return p;
}

int cmd_fuzz(const AppConfig& cfg, const fs::path& pair_manifest, std::ostream& out,
             std::ostream& err) {
  return guarded(err, [&] {
    cfg.validate();
    const auto spec = load_pair_manifest(pair_manifest, cfg);
    const auto seeds = load_seeds(spec.seeds_dir);
    const auto state = fuzz_campaign(spec.pair, seeds, fuzz_config(cfg));
    write_corpus(cfg.corpus_dir, state.cases);
    out << std::fixed << std::setprecision(3);
    out << "coverage: " << state.coverage_fraction() << " (" << state.cumulative_coverage.size()
        << "/" << state.instrumentable_lines.size() << " lines)\n";
    out << "cases: " << state.generated_count << " generated, " << state.rejected_count
        << " rejected (rejection ratio " << state.rejection_rate() << ")\n";
    out << "queue: " << state.queue.size() << " retained\n";
    out << "stop: " << to_string(state.stop_reason) << "\n";
    out << "corpus: " << cfg.corpus_dir.string() << "\n";
    return 0;
  });
}

int cmd_exec(const AppConfig& cfg, const fs::path& pair_manifest, std::ostream& out,
             std::ostream& err) {
  return guarded(err, [&] {
    cfg.validate();
    const auto spec = load_pair_manifest(pair_manifest, cfg);
    const auto corpus = read_corpus(cfg.corpus_dir);
    ensure_parent(cfg.log_file);
    std::ofstream log(cfg.log_file, std::ios::trunc);
    if (!log) throw Error("cannot write log " + cfg.log_file.string());
    const auto records = run_batch(spec.pair, corpus, cfg.exec_limit, cfg.workers,
                                   [&log](const ExecutionRecord& r) {
                                     log << record_to_json_line(r) << '\n';
                                     log.flush();
                                   });
    if (!log) throw Error("write to log " + cfg.log_file.string() + " failed");
    std::int64_t pass = 0, fail = 0, excluded = 0;
    for (const auto& r : records) {
      pass += r.verdict == Verdict::kPass;
      fail += r.verdict == Verdict::kFail;
      excluded += r.verdict == Verdict::kExcluded;
    }
    out << "executed: " << records.size() << " (pass " << pass << ", fail " << fail
        << ", excluded " << excluded << ")\n";
    out << "log: " << cfg.log_file.string() << "\n";
    return 0;
  });
}

int cmd_localize(const AppConfig& cfg, const fs::path& pair_manifest, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    cfg.validate();
    const auto spec = load_pair_manifest(pair_manifest, cfg);
    const auto profiles = make_profiles(cfg);
    const auto& profile = profiles.get(spec.pair.language_profile_id);
    const auto records = read_log_file(cfg.log_file);
    const auto classes = classify_lines(spec.pair.translated_text, profile);
    const auto report = localize(records, classes, spec.pair, cfg.scoring);
    const auto text = report_to_text(report, spec.pair);
    write_file(cfg.report_file, report_to_json(report, spec.pair));
    write_file(text_report_path(cfg.report_file), text);
    out << text;
    out << "report: " << cfg.report_file.string() << "\n";
    return 0;
  });
}

int cmd_pipeline(const AppConfig& cfg, const fs::path& pair_manifest, std::ostream& out,
                 std::ostream& err) {
  if (int rc = cmd_fuzz(cfg, pair_manifest, out, err); rc != 0) return rc;
  if (int rc = cmd_exec(cfg, pair_manifest, out, err); rc != 0) return rc;
  return cmd_localize(cfg, pair_manifest, out, err);
}

int cmd_bench(const AppConfig& cfg, const fs::path& corpus_manifest, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    cfg.validate();
    const auto specs = load_corpus_manifest(corpus_manifest, cfg);
    const auto profiles = make_profiles(cfg);
    std::vector<BenchPair> pairs;
    for (const auto& s : specs) {
      BenchPair bp{s.pair, {s.pair.pair_id, s.buggy_lines}, {}, s.complexity};
      try {
        bp.seeds = load_seeds(s.seeds_dir);
      } catch (const Error& e) {
        err << "warning: pair " << s.pair.pair_id << ": " << e.what() << "\n";
      }
      pairs.push_back(std::move(bp));
    }
    BenchConfig bench;
    bench.fuzz = cfg.fuzz;
    bench.scoring = cfg.scoring;
    bench.budgets = cfg.budgets;
    bench.workers = cfg.workers;
    bench.profiles = &profiles;
    const auto summary = evaluate_corpus(pairs, bench);
    const auto text = summary_to_text(summary);
    write_file(cfg.summary_file, summary_to_json(summary));
    write_file(text_report_path(cfg.summary_file), text);
    out << text;
    out << "summary: " << cfg.summary_file.string() << "\n";
    return 0;
  });
}

}  // namespace thinter
