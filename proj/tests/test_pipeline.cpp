#include <doctest/doctest.h>

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "core/budget.hpp"
#include "core/digest.hpp"
#include "core/error.hpp"
#include "core/pipeline.hpp"
#include "core/text.hpp"
#include "core/tokenizer.hpp"
#include "support/oracles.hpp"
#include "support/tempdir.hpp"

using namespace codeocr;
namespace fs = std::filesystem;

namespace {

// Quarter-size pages keep these tests quick; dimensions stay divisible by
// both patch sizes.
JobSpec small_job(const fs::path& out_dir, std::vector<std::string> inputs) {
  JobSpec job;
  job.inputs = std::move(inputs);
  job.output_dir = out_dir.string();
  job.render.base_width = 1120;
  job.render.base_height = 1120;
  job.ratios = {1.0, 4.0};
  job.repeats = 2;
  job.gateway.mode = "mock";
  job.gateway.mock_noise = 0.0;
  return job;
}

std::map<std::string, std::string> hash_tree(const fs::path& root,
                                             const std::string& skip_name) {
  std::map<std::string, std::string> hashes;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().filename() == skip_name) continue;
    hashes[fs::relative(entry.path(), root).string()] =
        digest_hex(read_file(entry.path().string()));
  }
  return hashes;
}

bool message_contains(const std::function<void()>& fn, const std::string& needle) {
  try {
    fn();
  } catch (const Error& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("ratios format as file-name-safe strings") {
  CHECK(format_ratio(1.0) == "1");
  CHECK(format_ratio(4.0) == "4");
  CHECK(format_ratio(8.0) == "8");
  CHECK(format_ratio(2.5) == "2.5");
  CHECK(format_ratio(1.25) == "1.25");
}

TEST_CASE("job validation rejects inconsistent specs") {
  testsupport::TempDir dir;
  const fs::path src = dir.path() / "a.py";
  testsupport::write_text_file(src, "x = 1\n");

  JobSpec ok = small_job(dir.path() / "out", {src.string()});
  CHECK_NOTHROW(ok.validate());

  JobSpec both = ok;
  both.corpus_root = dir.path().string();
  CHECK_THROWS_AS(both.validate(), Error);

  JobSpec neither = ok;
  neither.inputs.clear();
  CHECK_THROWS_AS(neither.validate(), Error);

  JobSpec bad = ok;
  bad.ratios.clear();
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = ok;
  bad.ratios = {0.5};
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = ok;
  bad.patch = 13;  // 1120 is not divisible by 13
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = ok;
  bad.repeats = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = ok;
  bad.jobs = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = ok;
  bad.max_n = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = ok;
  bad.output_dir.clear();
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = ok;
  bad.gateway.mode = "carrier-pigeon";
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = ok;
  bad.gateway.mock_noise = -1.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = ok;
  bad.gateway.mode = "http";  // endpoint still empty
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = ok;
  bad.language_override = "klingon";
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = ok;
  bad.language_override = "python";
  CHECK_NOTHROW(bad.validate());
}

TEST_CASE("job specs round-trip through JSON") {
  testsupport::TempDir dir;
  const fs::path src = dir.path() / "a.py";
  testsupport::write_text_file(src, "x = 1\n");

  JobSpec job = small_job(dir.path() / "out", {src.string()});
  job.repeats = 3;
  job.jobs = 2;
  job.max_n = 3;
  job.instruction = "reply with the code";
  job.temperature = 0.1;
  job.max_output_tokens = 2048;
  job.gateway.mock_noise = 2.0;

  const JobSpec back = JobSpec::from_json(job.to_json());
  CHECK(back.inputs == job.inputs);
  CHECK(back.output_dir == job.output_dir);
  CHECK(back.render.base_width == 1120);
  CHECK(back.ratios == job.ratios);
  CHECK(back.repeats == 3);
  CHECK(back.jobs == 2);
  CHECK(back.max_n == 3);
  CHECK(back.instruction == job.instruction);
  REQUIRE(back.temperature.has_value());
  CHECK(*back.temperature == 0.1);
  REQUIRE(back.max_output_tokens.has_value());
  CHECK(*back.max_output_tokens == 2048);
  CHECK(back.gateway.mode == "mock");
  CHECK(back.gateway.mock_noise == 2.0);

  CHECK_THROWS_AS(JobSpec::from_json(nlohmann::json::object()), Error);
  nlohmann::json bad_tokenizer = job.to_json();
  bad_tokenizer["tokenizer"]["kind"] = "external";
  CHECK_THROWS_AS(JobSpec::from_json(bad_tokenizer), Error);
}

TEST_CASE("stages demand their prerequisites in order") {
  testsupport::TempDir dir;
  const fs::path src = dir.path() / "f.py";
  testsupport::write_text_file(src, "def f(x):\n    return x + 1\n");
  JobSpec job = small_job(dir.path() / "out", {src.string()});
  job.ratios = {4.0};
  job.repeats = 1;

  CHECK(message_contains([&] { stage_render(job); }, "run ingest first"));
  stage_ingest(job);
  CHECK(message_contains([&] { stage_plan(job); }, "run render first"));
  CHECK(message_contains([&] { stage_report(job); }, "run render first"));
  const RenderStats stats = stage_render(job);
  CHECK(stats.files == 1);
  CHECK(stats.failures == 0);
  CHECK(stats.pages == 1);
  CHECK(message_contains([&] { stage_compress(job); }, "run plan first"));
  stage_plan(job);
  CHECK_THROWS_AS(stage_transcribe(job), Error);  // scaled pages missing
  stage_compress(job);
  CHECK(message_contains([&] { stage_score(job); }, "run transcribe first"));
  stage_transcribe(job);
  CHECK(message_contains([&] { stage_report(job); }, "run score first"));
  stage_score(job);
  const nlohmann::json summary = stage_report(job);
  CHECK(summary.at("totals").at("samples") == 1);
}

TEST_CASE("noise-free pipeline produces perfect scores and full artifacts") {
  testsupport::TempDir dir;
  const fs::path src_a = dir.path() / "a.py";
  const fs::path src_b = dir.path() / "b.go";
  const std::string text_a = "def add(a, b):\n    total = a + b\n    return total\n";
  const std::string text_b = "func main() {\n\tx := compute(4)\n\tprint(x)\n}\n";
  testsupport::write_text_file(src_a, text_a);
  testsupport::write_text_file(src_b, text_b);

  JobSpec job = small_job(dir.path() / "out", {src_a.string(), src_b.string()});
  const nlohmann::json summary = run_pipeline(job);

  const Tokenizer tokenizer = Tokenizer::builtin();
  const std::uint64_t tokens = tokenizer.count(text_a) + tokenizer.count(text_b);
  CHECK(summary.at("totals").at("samples") == 2);
  CHECK(summary.at("totals").at("plans") == 4);
  CHECK(summary.at("totals").at("text_tokens") == tokens);
  CHECK(summary.at("repeats") == 2);
  CHECK(summary.at("style") == "plain");

  for (const char* key : {"1", "4"}) {
    REQUIRE(summary.at("per_ratio").contains(key));
    const auto& r = summary.at("per_ratio").at(key);
    CHECK(r.at("cer_mean") == 0.0);
    CHECK(r.at("cer_std") == 0.0);
    CHECK(r.at("es_mean") == 100.0);
    CHECK(r.at("em_rate") == 1.0);
    CHECK(r.at("ngram_mean") == 1.0);
    CHECK(r.at("prevalence").at("token") == 0.0);
    CHECK(r.at("prevalence").at("line") == 0.0);
    CHECK(r.at("prevalence").at("block") == 0.0);
    CHECK(r.at("records") == 4);  // 2 files x 2 repeats
  }

  // Every artifact the layout promises, for both digests and both ratios.
  const fs::path out = dir.path() / "out";
  const std::string dig_a = digest_hex(text_a);
  const std::string dig_b = digest_hex(text_b);
  CHECK(fs::exists(out / "manifest.json"));
  CHECK(fs::exists(out / "summary.json"));
  std::uint64_t achieved_k4 = 0;
  for (const std::string& dig : {dig_a, dig_b}) {
    CHECK(fs::exists(out / "pages" / (dig + "-plain-base-p000.png")));
    for (const char* k : {"1", "4"}) {
      const std::string stem = dig + "-plain-k" + k;
      CHECK(fs::exists(out / "pages" / (stem + "-p000.png")));
      CHECK(fs::exists(out / "runs" / (stem + ".jsonl")));
      CHECK(fs::exists(out / "reports" / (stem + ".jsonl")));
      const fs::path plan_file = out / "plans" / (stem + ".json");
      REQUIRE(fs::exists(plan_file));
      const CompressionPlan plan = CompressionPlan::from_json(
          nlohmann::json::parse(read_file(plan_file.string())));
      CHECK(plan.achieved_visual_tokens ==
            static_cast<std::uint64_t>(plan.pages) * plan.grid_width * plan.grid_height);
      if (std::string(k) == "4") achieved_k4 += plan.achieved_visual_tokens;
    }
  }
  CHECK(summary.at("per_ratio").at("4").at("achieved_visual_tokens") == achieved_k4);

  // Raw run records carry the fields the scorer needs.
  const std::string runs_text =
      read_file((out / "runs" / (dig_a + "-plain-k4.jsonl")).string());
  int records = 0;
  for (std::string_view line : split_lines(runs_text)) {
    if (line.empty()) continue;
    const nlohmann::json rec = nlohmann::json::parse(line);
    CHECK(rec.at("sample_id") == dig_a);
    CHECK(rec.at("ratio") == 4.0);
    CHECK(rec.at("run_index") == records);
    CHECK(rec.at("attempts") == 1);
    CHECK(rec.at("text") == text_a);
    ++records;
  }
  CHECK(records == 2);
}

TEST_CASE("reruns are byte-identical regardless of parallelism") {
  testsupport::TempDir dir;
  std::vector<std::string> inputs;
  for (int i = 0; i < 3; ++i) {
    const fs::path p = dir.path() / ("f" + std::to_string(i) + ".py");
    testsupport::write_text_file(p, testsupport::synthetic_source(400 + i, 12));
    inputs.push_back(p.string());
  }

  JobSpec serial = small_job(dir.path() / "serial", inputs);
  serial.gateway.mock_noise = 1.0;  // noisy output must still be reproducible
  serial.jobs = 1;
  JobSpec parallel = small_job(dir.path() / "parallel", inputs);
  parallel.gateway.mock_noise = 1.0;
  parallel.jobs = 4;

  run_pipeline(serial);
  run_pipeline(parallel);

  // manifest.json embeds the job spec (different output_dir); all derived
  // artifacts must agree byte for byte.
  const auto a = hash_tree(dir.path() / "serial", "manifest.json");
  const auto b = hash_tree(dir.path() / "parallel", "manifest.json");
  CHECK(a.size() > 10);
  CHECK(a == b);
}

TEST_CASE("a file too wide to paginate is reported, not fatal") {
  testsupport::TempDir dir;
  const fs::path good = dir.path() / "good.py";
  const fs::path bad = dir.path() / "bad.py";
  testsupport::write_text_file(good, "x = 1\ny = 2\n");
  // One logical line needing more wrapped rows than a page holds.
  testsupport::write_text_file(bad, std::string(2000, 'x') + "\n");

  JobSpec job = small_job(dir.path() / "out", {good.string(), bad.string()});
  job.ratios = {4.0};
  job.repeats = 1;

  const nlohmann::json summary = run_pipeline(job);
  CHECK(summary.at("totals").at("samples") == 1);
  REQUIRE(summary.contains("failures"));
  REQUIRE(summary.at("failures").size() == 1);
  CHECK(summary.at("failures").at(0).at("path") == bad.string());
  CHECK_FALSE(summary.at("failures").at(0).at("error").get<std::string>().empty());

  const nlohmann::json manifest =
      nlohmann::json::parse(read_file((dir.path() / "out" / "manifest.json").string()));
  for (const auto& entry : manifest.at("entries")) {
    if (entry.at("path") == bad.string()) CHECK_FALSE(entry.contains("render"));
    if (entry.at("path") == good.string()) CHECK(entry.contains("render"));
  }

  const RenderStats stats = stage_render(job);
  CHECK(stats.files == 1);
  CHECK(stats.failures == 1);
}

TEST_CASE("bench mode measures without writing pages") {
  testsupport::TempDir dir;
  const fs::path src = dir.path() / "f.py";
  testsupport::write_text_file(src, testsupport::synthetic_source(7, 20));
  JobSpec job = small_job(dir.path() / "out", {src.string()});

  stage_ingest(job);
  const RenderStats stats = stage_render(job, true);
  CHECK(stats.files == 1);
  CHECK(stats.pages >= 1);
  CHECK(stats.text_tokens > 0);
  CHECK(stats.tokens_per_second > 0.0);
  CHECK_FALSE(fs::exists(dir.path() / "out" / "pages"));
  // Bench leaves the manifest untouched, so planning still lacks renders.
  CHECK(message_contains([&] { stage_plan(job); }, "run render first"));
}

TEST_CASE("language override relabels every entry") {
  testsupport::TempDir dir;
  const fs::path src = dir.path() / "f.go";
  testsupport::write_text_file(src, "func f() int {\n\treturn 1\n}\n");
  JobSpec job = small_job(dir.path() / "out", {src.string()});
  job.language_override = "python";
  const CorpusManifest manifest = stage_ingest(job);
  REQUIRE(manifest.entries.size() == 1);
  CHECK(manifest.entries[0].language == "python");
}
