#include "thinter/runner.hpp"

#include <sodium.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <sstream>

namespace thinter {

namespace {

using json = nlohmann::json;

template <typename Int>
bool parse_int(std::string_view s, Int& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

std::string to_base64(std::string_view bytes) {
  const auto max_len =
      sodium_base64_ENCODED_LEN(bytes.size(), sodium_base64_VARIANT_ORIGINAL);
  std::string out(max_len, '\0');
  sodium_bin2base64(out.data(), out.size(),
                    reinterpret_cast<const unsigned char*>(bytes.data()),
                    bytes.size(), sodium_base64_VARIANT_ORIGINAL);
  out.resize(std::char_traits<char>::length(out.c_str()));
  return out;
}

Bytes from_base64(std::string_view text) {
  Bytes out(text.size() / 4 * 3 + 3, '\0');
  std::size_t len = 0;
  if (sodium_base642bin(reinterpret_cast<unsigned char*>(out.data()), out.size(),
                        text.data(), text.size(), nullptr, &len, nullptr,
                        sodium_base64_VARIANT_ORIGINAL) != 0) {
    throw Error("invalid base64 in execution log");
  }
  out.resize(len);
  return out;
}

std::chrono::milliseconds to_ms(double seconds) {
  return std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000.0));
}

}  // namespace

CoverageMap parse_lcov(std::string_view report) {
  CoverageMap coverage;
  bool seen_sf = false;
  int report_line = 0;
  std::size_t pos = 0;
  while (pos < report.size()) {
    const auto nl = report.find('\n', pos);
    auto line = report.substr(pos, nl == std::string_view::npos ? std::string_view::npos
                                                                : nl - pos);
    pos = nl == std::string_view::npos ? report.size() : nl + 1;
    ++report_line;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line == "end_of_record") break;
    if (line.starts_with("SF:")) {
      if (seen_sf) break;  // no end_of_record before the next section
      seen_sf = true;
      continue;
    }
    if (!line.starts_with("DA:")) continue;

    const auto body = line.substr(3);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos)
      throw MalformedCoverage("DA record without count: '" + std::string(line) + "'",
                              report_line);
    auto count_text = body.substr(comma + 1);
    // Optional trailing checksum field.
    if (const auto c2 = count_text.find(','); c2 != std::string_view::npos)
      count_text = count_text.substr(0, c2);
    LineNo line_no = 0;
    std::int64_t count = 0;
    if (!parse_int(body.substr(0, comma), line_no) || line_no < 1 ||
        !parse_int(count_text, count) || count < 0) {
      throw MalformedCoverage("bad DA record '" + std::string(line) + "'", report_line);
    }
    coverage[line_no] += count;
  }
  return coverage;
}

std::vector<LineNo> covered_lines(const CoverageMap& coverage) {
  std::vector<LineNo> lines;
  for (const auto& [line, count] : coverage)
    if (count > 0) lines.push_back(line);
  return lines;
}

std::filesystem::path write_payload(const std::filesystem::path& dir,
                                    std::int64_t case_id, std::string_view payload) {
  auto path = dir / ("case_" + std::to_string(case_id) + ".in");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw Error("cannot write payload file " + path.string());
  return path;
}

std::optional<CoverageMap> collect_coverage(const RunnerProfile& profile,
                                            const std::filesystem::path& payload_path,
                                            const std::filesystem::path& scratch_dir) {
  if (!profile.coverage_command_template) return std::nullopt;
  const auto report_path = scratch_dir / "coverage.info";
  std::error_code ec;
  std::filesystem::remove(report_path, ec);
  auto cmd = substitute(*profile.coverage_command_template, "input",
                        shell_quote(payload_path.string()));
  cmd = substitute(cmd, "coverage_out", shell_quote(report_path.string()));

  const auto outcome = run_shell(cmd, payload_path, to_ms(profile.timeout_s));
  if (outcome.exit_status != ExitStatus::kOk) {
    spdlog::warn("coverage command failed ({}): {}",
                 outcome.exit_status == ExitStatus::kTimeout ? "timeout" : "nonzero exit",
                 outcome.stderr_bytes.substr(0, 200));
    return std::nullopt;
  }
  std::ifstream in(report_path, std::ios::binary);
  if (!in) {
    spdlog::warn("coverage command produced no report at {}", report_path.string());
    return std::nullopt;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_lcov(ss.str());
  } catch (const MalformedCoverage& e) {
    spdlog::warn("unreadable coverage report: {}", e.what());
    return std::nullopt;
  }
}

ExecutionRecord run_one(const CodePair& pair, const TestCase& test_case) {
  if (!test_case.valid)
    throw Error("run_one called on invalid case " + std::to_string(test_case.case_id));

  const auto started = std::chrono::steady_clock::now();
  TempDir scratch("thinter-run");
  const auto payload_path =
      write_payload(scratch.path(), test_case.case_id, test_case.payload);
  const auto quoted = shell_quote(payload_path.string());

  const auto& src_profile = pair.source_runner;
  const auto& dst_profile = pair.translated_runner;
  const auto src = run_shell(substitute(src_profile.run_command_template, "input", quoted),
                             payload_path, to_ms(src_profile.timeout_s));
  const auto dst = run_shell(substitute(dst_profile.run_command_template, "input", quoted),
                             payload_path, to_ms(dst_profile.timeout_s));

  ExecutionRecord record;
  record.case_id = test_case.case_id;
  record.source_output = src.stdout_bytes;
  record.translated_output = dst.stdout_bytes;
  if (!src.stderr_bytes.empty() || !dst.stderr_bytes.empty()) {
    spdlog::debug("case {} stderr: source={} translated={}", test_case.case_id,
                  src.stderr_bytes.substr(0, 200), dst.stderr_bytes.substr(0, 200));
  }

  if (src.exit_status == ExitStatus::kNonzeroExit) {
    record.verdict = Verdict::kExcluded;
    record.exclusion_reason = ExclusionReason::kSourceCrash;
  } else if (src.exit_status == ExitStatus::kTimeout) {
    record.verdict = Verdict::kExcluded;
    record.exclusion_reason = dst.exit_status == ExitStatus::kTimeout
                                  ? ExclusionReason::kBothTimeout
                                  : ExclusionReason::kSourceTimeout;
  } else if (dst.exit_status != ExitStatus::kOk) {
    record.verdict = Verdict::kFail;
  } else {
    record.verdict = oracle_verdict(src.stdout_bytes, dst.stdout_bytes,
                                    dst_profile.normalization);
  }

  if (record.verdict != Verdict::kExcluded) {
    if (auto cov = collect_coverage(dst_profile, payload_path, scratch.path())) {
      const int n = pair.translated_line_count();
      for (LineNo line : covered_lines(*cov))
        if (line >= 1 && line <= n) record.covered_lines.push_back(line);
    }
  }
  record.wall_time_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - started)
                            .count();
  return record;
}

std::vector<ExecutionRecord> run_batch(const CodePair& pair,
                                       std::span<const TestCase> corpus,
                                       std::optional<std::int64_t> limit, int workers,
                                       const RecordSink& sink) {
  std::vector<const TestCase*> selected;
  for (const auto& tc : corpus) {
    if (limit && static_cast<std::int64_t>(selected.size()) >= *limit) break;
    if (tc.valid) selected.push_back(&tc);
  }

  std::vector<ExecutionRecord> records(selected.size());
  std::exception_ptr failure;
  std::atomic<bool> abort{false};
  std::mutex sink_mutex;
  const auto n = static_cast<std::int64_t>(selected.size());

#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, workers))
  for (std::int64_t i = 0; i < n; ++i) {
    if (abort.load()) continue;
    try {
      records[i] = run_one(pair, *selected[i]);
      std::lock_guard lock(sink_mutex);
      if (sink) sink(records[i]);
    } catch (...) {
      std::lock_guard lock(sink_mutex);
      if (!failure) failure = std::current_exception();
      abort = true;
    }
  }
  if (failure) std::rethrow_exception(failure);
  sort_by_case_id(records);
  return records;
}

std::string record_to_json_line(const ExecutionRecord& r) {
  json j;
  j["case_id"] = r.case_id;
  j["verdict"] = std::string(to_string(r.verdict));
  j["exclusion_reason"] = r.exclusion_reason
                              ? json(std::string(to_string(*r.exclusion_reason)))
                              : json(nullptr);
  j["source_output_b64"] = to_base64(r.source_output);
  j["translated_output_b64"] = to_base64(r.translated_output);
  j["covered_lines"] = r.covered_lines;
  j["wall_time_ms"] = r.wall_time_ms;
  return j.dump();
}

ExecutionRecord record_from_json_line(std::string_view line) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(std::string("malformed execution log line: ") + e.what());
  }
  try {
    ExecutionRecord r;
    r.case_id = j.at("case_id").get<std::int64_t>();
    r.verdict = parse_verdict(j.at("verdict").get<std::string>());
    if (const auto& reason = j.at("exclusion_reason"); !reason.is_null())
      r.exclusion_reason = parse_exclusion_reason(reason.get<std::string>());
    r.source_output = from_base64(j.at("source_output_b64").get<std::string>());
    r.translated_output = from_base64(j.at("translated_output_b64").get<std::string>());
    r.covered_lines = j.at("covered_lines").get<std::vector<LineNo>>();
    std::sort(r.covered_lines.begin(), r.covered_lines.end());
    r.covered_lines.erase(std::unique(r.covered_lines.begin(), r.covered_lines.end()),
                          r.covered_lines.end());
    r.wall_time_ms = j.at("wall_time_ms").get<std::int64_t>();
    if ((r.verdict == Verdict::kExcluded) != r.exclusion_reason.has_value())
      throw Error("execution log: verdict and exclusion_reason disagree for case " +
                  std::to_string(r.case_id));
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed execution log record: ") + e.what());
  }
}

void write_log(std::ostream& out, std::span<const ExecutionRecord> records) {
  for (const auto& r : records) out << record_to_json_line(r) << '\n';
}

std::vector<ExecutionRecord> read_log(std::istream& in) {
  std::vector<ExecutionRecord> records;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    records.push_back(record_from_json_line(line));
  }
  return records;
}

std::vector<ExecutionRecord> read_log_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read execution log " + path.string());
  return read_log(in);
}

void sort_by_case_id(std::vector<ExecutionRecord>& records) {
  std::stable_sort(records.begin(), records.end(),
                   [](const auto& a, const auto& b) { return a.case_id < b.case_id; });
}

bool log_is_self_consistent(std::span<const ExecutionRecord> records,
                            Normalization normalization) {
  return std::all_of(records.begin(), records.end(), [&](const auto& r) {
    if ((r.verdict == Verdict::kExcluded) != r.exclusion_reason.has_value())
      return false;
    return r.verdict != Verdict::kPass ||
           oracle_verdict(r.source_output, r.translated_output, normalization) ==
               Verdict::kPass;
  });
}

}  // namespace thinter
