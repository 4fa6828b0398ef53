#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("otlab_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

struct Run {
  int status = -1;
  std::string out;
};

Run otlab(const std::string& args) {
  const std::string cmd = std::string(OTLAB_CLI) + ' ' + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& file) {
  std::ifstream in(file);
  std::vector<std::string> out;
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("sample, signature and stats") {
  REQUIRE(otlab("sample --n 8 --seed 3 --out " + path("p.jsonl")).status == 0);
  const auto file = lines(path("p.jsonl"));
  REQUIRE(file.size() == 9);
  CHECK(json::parse(file[0]) == json{{"B", 52}, {"n", 8}});
  CHECK(json::parse(file[1]).contains("x"));

  const Run sig = otlab("signature --reduced --points " + path("p.jsonl"));
  REQUIRE(sig.status == 0);
  const json j = json::parse(sig.out);
  CHECK(j["n"] == 8);
  CHECK(j["signature"].size() == 8 * 7);
  CHECK(j["fingerprint"].get<std::string>().size() == 32);
  CHECK(j["order"].size() == 8);
  CHECK(j.contains("mirror_fingerprint"));
  CHECK(j.contains("reduced"));
  CHECK(otlab("signature --points " + path("p.jsonl")).out == otlab("signature --points " + path("p.jsonl")).out);

  REQUIRE(otlab("stats --points " + path("p.jsonl") + " --out " + path("s.csv")).status == 0);
  const auto st = lines(path("s.csv"));
  CHECK(st.size() == 9);
  CHECK(st[0] == "i,L,U");

  std::ofstream(path("bad.jsonl")) << "{\"B\": 4}\n";
  CHECK(otlab("signature --points " + path("bad.jsonl")).status == 2);
}

TEST_CASE("census files") {
  const Run r = otlab("census --n 6 --samples 20000 --window 5000 --seed 1 --out " + path("c.csv"));
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["samples"] == 20000);
  CHECK(j["generator"] == "mt19937_64/splitmix64");
  const auto w = lines(path("c.csv"));
  REQUIRE(w.size() == 5);
  CHECK(w[0] == "samples,distinct,new_in_window");
  CHECK(w[4].rfind("20000,", 0) == 0);
  const auto ranks = lines(path("c_ranks.csv"));
  CHECK(ranks[0] == "rank,count");
  CHECK(static_cast<long>(ranks.size()) == 1 + j["distinct"].get<long>());

  CHECK(otlab("census --n 10 --samples 50000 --max-types 100 --out " + path("cap.csv")).status == 3);
  CHECK(otlab("census --n 2 --samples 10 --out " + path("x.csv")).status != 0);
}

TEST_CASE("collide then rayleigh") {
  const Run r = otlab("collide --n 6 --trials 200 --seed 2 --out " + path("col.csv"));
  REQUIRE(r.status == 0);
  const json j = json::parse(r.out);
  CHECK(j["trials"] == 200);
  const auto rows = lines(path("col.csv"));
  REQUIRE(rows.size() == 201);
  CHECK(rows[0] == "trial,C");
  CHECK(rows[1].rfind("0,", 0) == 0);

  REQUIRE(otlab("rayleigh --in " + path("col.csv") + " --out " + path("fit.json")).status == 0);
  std::ifstream in(path("fit.json"));
  const json fit = json::parse(in);
  for (const char* key : {"samples", "sigma", "ks_statistic", "p_value", "collision_scale_estimate",
                          "collision_scale_stderr"}) {
    CHECK(fit.contains(key));
  }
  CHECK(fit["samples"] == 200);

  std::ofstream(path("few.csv")) << "trial,C\n0,3\n1,4\n";
  CHECK(otlab("rayleigh --in " + path("few.csv") + " --out " + path("few.json")).status == 2);
}

TEST_CASE("verify suites") {
  const Run u = otlab("verify --suite U --n 8 --trials 200 --out " + path("u.csv"));
  CHECK(u.status == 0);
  const auto rows = lines(path("u.csv"));
  REQUIRE(rows.size() > 2);
  CHECK(rows[0] == "n,k,estimate,stderr,bound,pass");
  CHECK(rows[1].rfind("8,mean_U,", 0) == 0);

  const Run g = otlab("verify --suite greedy --n 10 --trials 100 --out " + path("g.csv"));
  CHECK(g.status == 0);
  CHECK(lines(path("g.csv")).size() == 6);

  const Run b = otlab("verify --suite butterfly --trials 20 --out " + path("b.csv"));
  CHECK(b.status == 0);
  const auto br = lines(path("b.csv"));
  REQUIRE(br.size() == 2);
  CHECK(br[0] == "suite,trials,checks,violations,pass");
  CHECK(fs::exists(path("b_counterexamples.jsonl")));
  CHECK(fs::file_size(path("b_counterexamples.jsonl")) == 0);

  CHECK(otlab("verify --suite nope --trials 5 --out " + path("n.csv")).status != 0);
}

TEST_CASE("greedy command") {
  const Run r = otlab("greedy --n 12 --trials 20 --tie-break max-degree --out " + path("gr.csv"));
  REQUIRE(r.status == 0);
  CHECK(json::parse(r.out)["failures"] == 0);
  const auto rows = lines(path("gr.csv"));
  CHECK(rows[0] == "n,total_bits,sum_L_minus_1,sum_U,max_k");
  CHECK(rows.size() == 21);
  fs::remove_all(workdir());
}
