#include "thinter/fuzzer.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <exception>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "thinter/runner.hpp"
#include "thinter/subprocess.hpp"

namespace thinter {

FilterConfig FilterConfig::defaults() {
  FilterConfig f;
  for (int c = 0; c < 256; ++c)
    if (std::isalnum(c) != 0 && c < 128) f.allowed.set(c);
  for (unsigned char c : std::string_view(" \n\t,.;:[]()-_\"")) f.allowed.set(c);
  return f;
}

FilterConfig FilterConfig::from_characters(std::string_view chars) {
  FilterConfig f;
  for (unsigned char c : chars) f.allowed.set(c);
  return f;
}

bool FilterConfig::accepts(std::string_view payload) const {
  return std::all_of(payload.begin(), payload.end(),
                     [&](char c) { return allowed.test(static_cast<unsigned char>(c)); });
}

std::vector<unsigned char> FilterConfig::allowed_bytes() const {
  std::vector<unsigned char> out;
  for (int c = 0; c < 256; ++c)
    if (allowed.test(c)) out.push_back(static_cast<unsigned char>(c));
  return out;
}

void FilterConfig::validate() const {
  if (allowed.none()) throw ConfigError("filter: allowed character set is empty");
}

void FuzzConfig::validate() const {
  if (!(coverage_target > 0.0 && coverage_target <= 1.0))
    throw ConfigError("fuzz.coverage_target must be in (0, 1]");
  if (max_cases < 1) throw ConfigError("fuzz.max_cases must be >= 1");
  if (time_budget.count() <= 0) throw ConfigError("fuzz.time_budget must be positive");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  filter.validate();
}

namespace mutators {

namespace {
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
}  // namespace

std::vector<Span> tokens(std::string_view payload) {
  std::vector<Span> out;
  std::size_t i = 0;
  while (i < payload.size()) {
    while (i < payload.size() && is_space(payload[i])) ++i;
    const auto begin = i;
    while (i < payload.size() && !is_space(payload[i])) ++i;
    if (i > begin) out.push_back({begin, i});
  }
  return out;
}

std::vector<Span> numbers(std::string_view payload) {
  std::vector<Span> out;
  std::size_t i = 0;
  while (i < payload.size()) {
    if (!is_digit(payload[i])) {
      ++i;
      continue;
    }
    auto begin = i;
    if (begin > 0 && payload[begin - 1] == '-' && (begin < 2 || !is_alnum(payload[begin - 2])))
      --begin;
    while (i < payload.size() && is_digit(payload[i])) ++i;
    out.push_back({begin, i});
  }
  return out;
}

Bytes substitute(std::string_view payload, std::size_t pos, unsigned char byte) {
  Bytes out(payload);
  out.at(pos) = static_cast<char>(byte);
  return out;
}

Bytes insert(std::string_view payload, std::size_t pos, unsigned char byte) {
  Bytes out(payload);
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(std::min(pos, out.size())),
             static_cast<char>(byte));
  return out;
}

Bytes erase(std::string_view payload, std::size_t pos) {
  Bytes out(payload);
  out.erase(pos, 1);
  return out;
}

Bytes duplicate_token(std::string_view payload, std::size_t token_index) {
  const auto toks = tokens(payload);
  const auto& t = toks.at(token_index);
  Bytes out(payload.substr(0, t.end));
  out += ' ';
  out.append(payload.substr(t.begin, t.end - t.begin));
  out.append(payload.substr(t.end));
  return out;
}

namespace {
Bytes replace_span(std::string_view payload, Span s, std::string_view with) {
  Bytes out(payload.substr(0, s.begin));
  out.append(with);
  out.append(payload.substr(s.end));
  return out;
}
}  // namespace

Bytes numeric_arith(std::string_view payload, std::size_t number_index, NumericOp op) {
  const auto nums = numbers(payload);
  const auto s = nums.at(number_index);
  const auto text = payload.substr(s.begin, s.end - s.begin);
  std::int64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    throw std::out_of_range("numeric literal out of range");
  std::int64_t result = 0;
  bool overflow = false;
  switch (op) {
    case NumericOp::kPlusOne:
      overflow = __builtin_add_overflow(value, 1, &result);
      break;
    case NumericOp::kMinusOne:
      overflow = __builtin_sub_overflow(value, 1, &result);
      break;
    case NumericOp::kPlusTen:
      overflow = __builtin_add_overflow(value, 10, &result);
      break;
    case NumericOp::kMinusTen:
      overflow = __builtin_sub_overflow(value, 10, &result);
      break;
    case NumericOp::kNegate:
      overflow = __builtin_sub_overflow(std::int64_t{0}, value, &result);
      break;
  }
  if (overflow) throw std::out_of_range("numeric mutation overflows");
  return replace_span(payload, s, std::to_string(result));
}

Bytes boundary(std::string_view payload, std::size_t number_index, std::int64_t value) {
  const auto nums = numbers(payload);
  return replace_span(payload, nums.at(number_index), std::to_string(value));
}

Bytes splice(std::string_view head, std::size_t head_cut, std::string_view tail,
             std::size_t tail_cut) {
  Bytes out(head.substr(0, std::min(head_cut, head.size())));
  out.append(tail.substr(std::min(tail_cut, tail.size())));
  return out;
}

}  // namespace mutators

namespace {

Bytes random_substitute(std::string_view p, Rng& rng, const std::vector<unsigned char>& allowed);

Bytes random_insert(std::string_view p, Rng& rng) {
  return mutators::insert(p, rng.below(p.size() + 1), static_cast<unsigned char>(rng.below(256)));
}

Bytes random_substitute(std::string_view p, Rng& rng, const std::vector<unsigned char>& allowed) {
  if (p.empty()) return random_insert(p, rng);
  return mutators::substitute(p, rng.below(p.size()), allowed[rng.below(allowed.size())]);
}

}  // namespace

TestCase mutate(const TestCase& parent, Rng& rng, std::span<const TestCase> pool,
                const FilterConfig& filter, std::int64_t new_id) {
  const auto allowed = filter.allowed_bytes();
  const std::string_view p = parent.payload;
  const auto op = static_cast<MutationOp>(rng.below(kMutationOpCount));

  Bytes out;
  switch (op) {
    case MutationOp::kSubstitute:
      out = random_substitute(p, rng, allowed);
      break;
    case MutationOp::kInsert:
      out = random_insert(p, rng);
      break;
    case MutationOp::kDelete:
      if (p.size() <= 1)
        out = random_substitute(p, rng, allowed);
      else
        out = mutators::erase(p, rng.below(p.size()));
      break;
    case MutationOp::kDuplicateToken: {
      const auto toks = mutators::tokens(p);
      out = toks.empty() ? random_insert(p, rng)
                         : mutators::duplicate_token(p, rng.below(toks.size()));
      break;
    }
    case MutationOp::kNumericArith: {
      const auto nums = mutators::numbers(p);
      if (nums.empty()) {
        out = random_substitute(p, rng, allowed);
        break;
      }
      const auto idx = rng.below(nums.size());
      const auto nop = static_cast<NumericOp>(rng.below(kNumericOpCount));
      try {
        out = mutators::numeric_arith(p, idx, nop);
      } catch (const std::out_of_range&) {
        out = random_substitute(p, rng, allowed);
      }
      break;
    }
    case MutationOp::kBoundary: {
      const auto nums = mutators::numbers(p);
      if (nums.empty()) {
        out = random_substitute(p, rng, allowed);
        break;
      }
      const auto idx = rng.below(nums.size());
      out = mutators::boundary(p, idx, kBoundaryValues[rng.below(std::size(kBoundaryValues))]);
      break;
    }
    case MutationOp::kSplice: {
      if (pool.size() < 2) {
        out = random_substitute(p, rng, allowed);
        break;
      }
      const auto& partner = pool[rng.below(pool.size())];
      const auto head_cut = rng.below(p.size() + 1);
      const auto tail_cut = rng.below(partner.payload.size() + 1);
      out = mutators::splice(p, head_cut, partner.payload, tail_cut);
      break;
    }
  }

  TestCase child;
  child.case_id = new_id;
  child.payload = std::move(out);
  child.origin = Origin::kMutant;
  child.parent_id = parent.case_id;
  child.valid = false;
  return child;
}

TestCase filter_case(TestCase candidate, const FilterConfig& filter) {
  candidate.valid = filter.accepts(candidate.payload);
  return candidate;
}

bool should_retain(const std::set<LineNo>& mutant_coverage,
                   const std::set<LineNo>& cumulative) {
  return std::any_of(mutant_coverage.begin(), mutant_coverage.end(),
                     [&](LineNo l) { return !cumulative.contains(l); });
}

std::string_view to_string(StopReason r) {
  switch (r) {
    case StopReason::kCoverageTarget:
      return "coverage_target";
    case StopReason::kTimeBudget:
      return "time_budget";
    case StopReason::kMaxCases:
      return "max_cases";
  }
  return "time_budget";
}

double CorpusState::coverage_fraction() const {
  if (instrumentable_lines.empty()) return 0.0;
  return static_cast<double>(cumulative_coverage.size()) /
         static_cast<double>(instrumentable_lines.size());
}

double CorpusState::rejection_rate() const {
  return generated_count == 0 ? 0.0
                              : static_cast<double>(rejected_count) /
                                    static_cast<double>(generated_count);
}

CoverageProbe make_command_probe(const CodePair& pair) {
  if (!pair.translated_runner.coverage_command_template)
    throw CoverageUnavailable("translated runner has no coverage command");
  return [&pair](const TestCase& tc,
                 std::set<LineNo>& instrumentable) -> std::optional<std::set<LineNo>> {
    TempDir scratch("thinter-fuzz");
    const auto input = write_payload(scratch.path(), tc.case_id, tc.payload);
    auto cov = collect_coverage(pair.translated_runner, input, scratch.path());
    if (!cov) return std::nullopt;
    const int n = pair.translated_line_count();
    std::set<LineNo> covered;
    for (const auto& [line, count] : *cov) {
      if (line < 1 || line > n) continue;
      instrumentable.insert(line);
      if (count > 0) covered.insert(line);
    }
    return covered;
  };
}

namespace {

// Round-robin over the queue; a parent whose last mutant added coverage is
// drawn twice before the cursor moves on.
class Scheduler {
 public:
  std::size_t next(std::size_t queue_size) {
    if (credits_ == 0) {
      if (started_) cursor_ = (cursor_ + 1) % queue_size;
      started_ = true;
      credits_ = cursor_ < novel_.size() && novel_[cursor_] ? 2 : 1;
    }
    --credits_;
    return cursor_;
  }
  void record(std::size_t queue_index, bool novel) {
    if (novel_.size() <= queue_index) novel_.resize(queue_index + 1, false);
    novel_[queue_index] = novel;
  }

 private:
  std::size_t cursor_ = 0;
  int credits_ = 0;
  bool started_ = false;
  std::vector<bool> novel_;
};

}  // namespace

CorpusState fuzz_campaign(const CodePair& pair, std::span<const TestCase> seeds,
                          const FuzzConfig& cfg, const CampaignObserver& observer) {
  return fuzz_campaign(make_command_probe(pair), seeds, cfg, observer);
}

CorpusState fuzz_campaign(const CoverageProbe& probe, std::span<const TestCase> seeds,
                          const FuzzConfig& cfg, const CampaignObserver& observer) {
  cfg.validate();
  if (seeds.empty()) throw Error("fuzz campaign needs at least one seed");
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();

  CorpusState state;
  std::int64_t next_id = 0;
  std::vector<std::int64_t> valid_seed_ids;
  for (const auto& s : seeds) {
    TestCase tc = s;
    tc.case_id = next_id++;
    tc.origin = Origin::kSeed;
    tc.parent_id.reset();
    tc = filter_case(std::move(tc), cfg.filter);
    ++state.generated_count;
    if (!tc.valid) ++state.rejected_count;
    state.cases.push_back(tc);
  }
  bool any_coverage = false;
  for (const auto& tc : state.cases) {
    if (!tc.valid) continue;
    auto cov = probe(tc, state.instrumentable_lines);
    if (cov) {
      any_coverage = true;
      state.cumulative_coverage.insert(cov->begin(), cov->end());
    }
    state.queue.push_back(tc);
  }
  if (state.queue.empty()) throw AllSeedsInvalid();
  if (!any_coverage) throw CoverageUnavailable("coverage command failed for every seed");
  if (observer) observer(state);

  Scheduler scheduler;
  Rng rng(cfg.rng_seed);
  const auto workers = static_cast<std::size_t>(cfg.workers);

  while (true) {
    if (state.coverage_fraction() >= cfg.coverage_target) {
      state.stop_reason = StopReason::kCoverageTarget;
      break;
    }
    if (state.generated_count >= cfg.max_cases) {
      state.stop_reason = StopReason::kMaxCases;
      break;
    }
    if (Clock::now() - start >= cfg.time_budget) {
      state.stop_reason = StopReason::kTimeBudget;
      break;
    }

    // Mutants are drawn serially so the RNG stream does not depend on the
    // worker count; only their coverage runs are concurrent.
    const auto batch = std::min<std::size_t>(
        workers, static_cast<std::size_t>(cfg.max_cases - state.generated_count));
    std::vector<TestCase> mutants;
    std::vector<std::size_t> parents;
    for (std::size_t b = 0; b < batch; ++b) {
      const auto qi = scheduler.next(state.queue.size());
      parents.push_back(qi);
      mutants.push_back(filter_case(
          mutate(state.queue[qi], rng, state.queue, cfg.filter, next_id++), cfg.filter));
    }

    std::vector<std::optional<std::set<LineNo>>> results(batch);
    std::vector<std::set<LineNo>> seen(batch);
    std::exception_ptr failure;
    const auto n = static_cast<std::int64_t>(batch);
#pragma omp parallel for schedule(dynamic, 1) num_threads(cfg.workers)
    for (std::int64_t i = 0; i < n; ++i) {
      if (!mutants[i].valid) continue;
      try {
        results[i] = probe(mutants[i], seen[i]);
      } catch (...) {
#pragma omp critical(thinter_fuzz_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t b = 0; b < batch; ++b) {
      auto& m = mutants[b];
      ++state.generated_count;
      state.instrumentable_lines.insert(seen[b].begin(), seen[b].end());
      bool novel = false;
      if (!m.valid) {
        ++state.rejected_count;
      } else if (results[b] && should_retain(*results[b], state.cumulative_coverage)) {
        novel = true;
        state.cumulative_coverage.insert(results[b]->begin(), results[b]->end());
        state.queue.push_back(m);
      }
      scheduler.record(parents[b], novel);
      state.cases.push_back(std::move(m));
      if (observer) observer(state);
    }
  }
  spdlog::debug("fuzz campaign: {} cases, {} rejected, coverage {:.3f}, stop {}",
                state.generated_count, state.rejected_count, state.coverage_fraction(),
                to_string(state.stop_reason));
  return state;
}

std::string corpus_manifest_json(std::span<const TestCase> cases) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : cases) {
    arr.push_back({{"case_id", c.case_id},
                   {"origin", std::string(to_string(c.origin))},
                   {"parent_id", c.parent_id ? nlohmann::json(*c.parent_id) : nlohmann::json()},
                   {"valid", c.valid}});
  }
  return arr.dump(2) + "\n";
}

void write_corpus(const std::filesystem::path& dir, std::span<const TestCase> cases) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create corpus directory " + dir.string() + ": " + ec.message());
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if ((name.starts_with("case_") && name.ends_with(".bin")) || name == "corpus.json")
      fs::remove(entry.path());
  }
  for (const auto& c : cases) {
    std::ofstream out(dir / ("case_" + std::to_string(c.case_id) + ".bin"),
                      std::ios::binary | std::ios::trunc);
    out.write(c.payload.data(), static_cast<std::streamsize>(c.payload.size()));
    if (!out) throw Error("cannot write corpus case " + std::to_string(c.case_id));
  }
  std::ofstream manifest(dir / "corpus.json", std::ios::trunc);
  manifest << corpus_manifest_json(cases);
  if (!manifest) throw Error("cannot write corpus manifest in " + dir.string());
}

namespace {
Bytes slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

std::vector<TestCase> read_corpus(const std::filesystem::path& dir) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(slurp(dir / "corpus.json"));
  } catch (const nlohmann::json::exception& e) {
    throw Error("malformed corpus manifest in " + dir.string() + ": " + e.what());
  }
  std::vector<TestCase> cases;
  for (const auto& item : doc) {
    TestCase tc;
    tc.case_id = item.at("case_id").get<std::int64_t>();
    tc.origin = parse_origin(item.at("origin").get<std::string>());
    if (!item.at("parent_id").is_null()) tc.parent_id = item["parent_id"].get<std::int64_t>();
    tc.valid = item.at("valid").get<bool>();
    tc.payload = slurp(dir / ("case_" + std::to_string(tc.case_id) + ".bin"));
    cases.push_back(std::move(tc));
  }
  std::stable_sort(cases.begin(), cases.end(),
                   [](const auto& a, const auto& b) { return a.case_id < b.case_id; });
  return cases;
}

std::vector<TestCase> load_seeds(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ConfigError("seeds directory not found: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<TestCase> seeds;
  for (const auto& f : files) {
    TestCase tc;
    tc.case_id = static_cast<std::int64_t>(seeds.size());
    tc.payload = slurp(f);
    tc.origin = Origin::kSeed;
    seeds.push_back(std::move(tc));
  }
  if (seeds.empty()) throw ConfigError("no seeds in " + dir.string());
  return seeds;
}

}  // namespace thinter
