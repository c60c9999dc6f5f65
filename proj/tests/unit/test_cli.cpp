#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(GRAPHLIM_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int st = pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("graphlim_cli_" + name)).string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("version") {
    const auto r = run("--version");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("graphlim 0.1.0", 0) == 0);
  }

  TEST_CASE("generate and count") {
    const auto g = run("generate --family paley --n 13");
    CHECK(g.status == 0);
    CHECK(g.out.rfind("13 39\n", 0) == 0);
    const auto c = run("count --kind hom --F c4 --G triangle");
    CHECK(c.status == 0);
    CHECK(c.out == "hom,c4,triangle,18\n");
    const auto h = run("--header count --kind ind --F edge --G triangle");
    CHECK(h.out == "kind,F,G,count\nind,edge,triangle,6\n");
  }

  TEST_CASE("density") {
    const auto d = run("density --kind t --F triangle --G paley:13");
    CHECK(d.status == 0);
    CHECK(d.out.rfind("t,triangle,paley:13,", 0) == 0);
    const auto mc = run("density --kind t --F edge --G er:200:0.5 --mc 1000");
    CHECK(mc.status == 2);  // Random families need --seed.
    CHECK(run("--seed 5 density --kind t --F edge --G er:200:0.5 --mc 1000").status == 0);
  }

  TEST_CASE("outputs are byte-identical for a fixed seed") {
    const std::string args = "--seed 7 graphon sample --W ua_limit --n 200";
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != run("--seed 8 graphon sample --W ua_limit --n 200").out);
    const std::string reg = "--seed 3 regularity run --eps 0.3 --backing two-cliques:40";
    CHECK(run(reg).out == run(reg).out);
  }

  TEST_CASE("threads do not change results") {
    const std::string base = "dist --metric cut --mode exact --G er:16:0.5 --H er:16:0.3 --seed 4";
    CHECK(run(base + " --threads 1").out == run(base + " --threads 4").out);
  }

  TEST_CASE("JSON outputs") {
    const auto d = run("dist --metric cut --mode exact --G complete:6 --H empty:6");
    REQUIRE(d.status == 0);
    const auto j = nlohmann::json::parse(d.out);
    CHECK(j["value"].get<double>() == doctest::Approx(5.0 / 6));
    CHECK(j["exact"].get<bool>());
    const auto s = nlohmann::json::parse(run("dist --metric sample --G triangle --H empty:3 --kmax 2").out);
    CHECK(s["value"].get<double>() == doctest::Approx(0.25));
    const auto v = nlohmann::json::parse(run("algebra verify-certificate --goodman").out);
    CHECK(v["matches"].get<bool>());
    const auto c = nlohmann::json::parse(run("algebra connmatrix --param hom --target triangle --k 2 --max-nodes 3").out);
    CHECK(c["is_psd"].get<bool>());
    CHECK(c["rank"].get<int>() <= 9);
    const auto e = nlohmann::json::parse(run("energy --model maxcut --G c4").out);
    CHECK(e["value"].get<double>() == doctest::Approx(0.25));
  }

  TEST_CASE("file output") {
    const auto path = temp_path("out.txt");
    std::filesystem::remove(path);
    CHECK(run("--out " + path + " generate --family cycle --n 4").status == 0);
    std::ifstream in(path);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.rfind("4 4\n", 0) == 0);
    // An edge list file works as a graph spec.
    const auto c = run("count --kind hom --F edge --G " + path);
    CHECK(c.status == 0);
    CHECK(c.out.substr(c.out.rfind(',') + 1) == "8\n");
    std::filesystem::remove(path);
  }

  TEST_CASE("exit codes") {
    CHECK(run("").status == 2);
    CHECK(run("count --kind nope --F edge --G triangle").status == 2);
    CHECK(run("count --kind hom --F edge --G no-such-graph").status == 2);
    CHECK(run("generate --family paley --n 7").status == 2);
    CHECK(run("count --kind hom --F k4 --G complete:300 --work-bound 1000").status == 3);
    CHECK(run("dist --metric cut --mode exact --G complete:30 --H empty:30").status == 3);
    CHECK(run("--help").status == 0);
  }

  TEST_CASE("acceptance checks") {
    CHECK(run("--paper-check 1").status == 0);
    CHECK(run("--paper-check 99").status == 2);
  }
}
