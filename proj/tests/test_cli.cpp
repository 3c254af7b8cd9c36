// Copyright 2026 The Unobstruct Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "unobstruct/cli.hpp"
#include "unobstruct/dataset.hpp"

using namespace unobstruct;
using namespace unobstruct::testing;
namespace fs = std::filesystem;

namespace {

struct Captured {
  int code;
  std::string out;
  std::string err;
};

Captured run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  auto* old_out = std::cout.rdbuf(out.rdbuf());
  auto* old_err = std::cerr.rdbuf(err.rdbuf());
  const int code = run_cli(args);
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  return {code, out.str(), err.str()};
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string s(const fs::path& p) { return p.string(); }

}  // namespace

TEST_CASE("gen-scenes writes scenes and a manifest, deterministically") {
  const auto a = fresh_dir("unobstruct_cli_gen_a"), b = fresh_dir("unobstruct_cli_gen_b");
  CHECK(run({"gen-scenes", "--seed", "7", "--count", "10", "--out", s(a)}).code == 0);
  CHECK(run({"gen-scenes", "--seed", "7", "--count", "10", "--out", s(b)}).code == 0);
  std::size_t files = 0;
  for (const auto& e : fs::directory_iterator(a / "scenes")) {
    ++files;
    CHECK(slurp(e.path()) == slurp(b / "scenes" / e.path().filename()));
  }
  CHECK(files == 10);
  CHECK(slurp(a / "manifest.jsonl") == slurp(b / "manifest.jsonl"));
  CHECK_FALSE(read_jsonl(a / "manifest.jsonl").empty());
}

TEST_CASE("unfillable bucket exits with a generation error") {
  const auto dir = fresh_dir("unobstruct_cli_gen_c");
  const auto r = run({"gen-scenes", "--hard", "100", "--min-objects", "1", "--max-objects", "2",
                      "--max-scenes", "50", "--out", s(dir)});
  CHECK(r.code == kExitGeneration);
  CHECK(r.err.find("Hard") != std::string::npos);
}

TEST_CASE("build-graphs on the fixture scene") {
  const auto dir = fresh_dir("unobstruct_cli_fixture");
  const auto out = dir / "graphs.jsonl";
  const auto r = run({"build-graphs", "--scene", fixture_path("scene4616.json"), "--target", "4",
                      "--out", s(out)});
  REQUIRE(r.code == 0);
  const auto docs = read_jsonl(out);
  REQUIRE(docs.size() == 1);
  const auto& d = docs[0];
  CHECK(d["target_object"] == 4);
  CHECK(d["obstruction_paths"] == json::parse("[[1,4],[3,4]]"));
  CHECK(d["top_objects"] == json::parse("[1,3]"));
  CHECK(d["depends_on"] == json::parse("[1,3]"));
  CHECK(d["k_min"] == 1);
  CHECK(d["num_paths"] == 2);
  CHECK(d["new_difficulty"] == "Medium");

  const auto vqa = dir / "vqa.jsonl";
  REQUIRE(run({"synth-vqa", "--graphs", s(out), "--out", s(vqa)}).code == 0);
  const auto samples = read_jsonl(vqa);
  REQUIRE(samples.size() == 2);
  CHECK(samples[0]["answer"] == kFixtureSomAnswer);
  const std::string nlp = samples[1]["answer"];
  CHECK(nlp.find(std::string("<answer>") + kFixtureNlpAnswerList + "</answer>") !=
        std::string::npos);
}

TEST_CASE("single-object scene gives one No-Occ record") {
  const auto dir = fresh_dir("unobstruct_cli_single");
  save_scene(dir / "one.json", box_scene(16, 16, {{1, 0, 2, 2, 9, 9, "cup"}}));
  REQUIRE(run({"build-graphs", "--scene", s(dir / "one.json"), "--out", s(dir / "g.jsonl")}).code ==
          0);
  const auto docs = read_jsonl(dir / "g.jsonl");
  REQUIRE(docs.size() == 1);
  CHECK(docs[0]["new_difficulty"] == "No-Occ");
}

TEST_CASE("cyclic relations are rejected with the edges listed") {
  const auto dir = fresh_dir("unobstruct_cli_cycle");
  std::ofstream(dir / "rel.json") << R"({"scene_id": "hand/1", "object_ids": [1, 2, 3],
    "relations": [{"obj1": 2, "obj2": 1}, {"obj1": 3, "obj2": 2}, {"obj1": 1, "obj2": 3}]})";
  const auto r = run({"build-graphs", "--relations", s(dir / "rel.json"), "--out",
                      s(dir / "g.jsonl")});
  CHECK(r.code == kExitValidation);
  CHECK(r.err.find("1->2") != std::string::npos);
  CHECK(r.err.find("2->3") != std::string::npos);
  CHECK(r.err.find("3->1") != std::string::npos);

  std::ofstream(dir / "ok.json") << R"({"scene_id": "hand/2", "object_ids": [1, 2, 3],
    "relations": [{"obj1": 2, "obj2": 1}, {"obj1": 3, "obj2": 2}]})";
  REQUIRE(run({"build-graphs", "--relations", s(dir / "ok.json"), "--target", "1", "--out",
               s(dir / "g.jsonl")})
              .code == 0);
  CHECK(read_jsonl(dir / "g.jsonl")[0]["obstruction_paths"] == json::parse("[[3,2,1]]"));
}

TEST_CASE("full pipeline with the oracle agent") {
  const auto dir = fresh_dir("unobstruct_cli_pipeline");
  REQUIRE(run({"gen-scenes", "--seed", "100", "--count", "25", "--out", s(dir)}).code == 0);
  REQUIRE(run({"--jobs", "3", "build-graphs", "--manifest", s(dir / "manifest.jsonl"), "--out",
               s(dir / "graphs" / "graphs.jsonl")})
              .code == 0);
  REQUIRE(run({"synth-vqa", "--graphs", s(dir / "graphs" / "graphs.jsonl"), "--out",
               s(dir / "vqa.jsonl")})
              .code == 0);
  REQUIRE(run({"run-agent", "--vqa", s(dir / "vqa.jsonl"), "--out", s(dir / "pred.jsonl")}).code ==
          0);
  const auto e = run({"evaluate", "--predictions", s(dir / "pred.jsonl"), "--vqa",
                      s(dir / "vqa.jsonl"), "--out", s(dir / "report.json"), "--samples",
                      s(dir / "samples.jsonl")});
  REQUIRE(e.code == 0);
  const auto report = json::parse(slurp(dir / "report.json"));
  for (const auto& [name, stratum] : report["strata"].items()) {
    if (stratum["count"] == 0) continue;
    CHECK(stratum["sr_f1"] == 1.0);
    CHECK(stratum["f1_rel"] == 1.0);
    CHECK(stratum["mp_ned"] == 0.0);
    CHECK(stratum["format_rate"] == 1.0);
  }

  const auto rw = run({"reward", "--predictions", s(dir / "pred.jsonl"), "--vqa",
                       s(dir / "vqa.jsonl"), "--out", s(dir / "rewards.jsonl"), "--lambda-fmt",
                       "0.25", "--lambda-task", "0.75"});
  REQUIRE(rw.code == 0);
  for (const auto& r : read_jsonl(dir / "rewards.jsonl")) CHECK(r["r"] == 1.0);

  const auto rep = run({"report", "--report", s(dir / "report.json")});
  CHECK(rep.code == 0);
  CHECK(rep.out == e.out);

  // noisy agent, then mismatched ids
  REQUIRE(run({"run-agent", "--vqa", s(dir / "vqa.jsonl"), "--out", s(dir / "noisy.jsonl"),
               "--agent", "corrupted", "--p-swap", "0.5", "--seed", "3"})
              .code == 0);
  CHECK(slurp(dir / "noisy.jsonl") != slurp(dir / "pred.jsonl"));
  std::ofstream(dir / "alien.jsonl") << R"({"sample_id": "alien/0/1/som", "output": ""})" << '\n';
  const auto bad = run({"evaluate", "--predictions", s(dir / "alien.jsonl"), "--vqa",
                        s(dir / "vqa.jsonl"), "--out", s(dir / "x.json")});
  CHECK(bad.code == kExitValidation);
  CHECK(bad.err.find("alien/0/1/som") != std::string::npos);
}

TEST_CASE("exit codes for bad input") {
  CHECK(run({"evaluate", "--predictions", "/nonexistent/p", "--vqa", "/nonexistent/v"}).code ==
        kExitIo);
  CHECK(run({"frobnicate"}).code == kExitValidation);
  CHECK(run({"gen-scenes", "--count", "many"}).code == kExitValidation);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("config file from the environment") {
  const auto dir = fresh_dir("unobstruct_cli_config");
  std::ofstream(dir / "bad.json") << R"({"rewards": {"lambda_fmt": -1}})";
  ::setenv("UNOBSTRUCT_CONFIG", s(dir / "bad.json").c_str(), 1);
  const auto r = run({"report", "--report", s(dir / "none.json")});
  ::unsetenv("UNOBSTRUCT_CONFIG");
  CHECK(r.code == kExitValidation);
}
