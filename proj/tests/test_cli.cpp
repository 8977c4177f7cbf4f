#include <doctest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <string>

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + GCOH_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string file(const std::string& name, const std::string& content) {
  const std::string path = std::string(GCOH_TEST_TMP) + "/" + name;
  std::ofstream(path) << content;
  return path;
}

const std::string k3_doc =
    R"({"vertices":[{"id":"R","weight":"27"},{"id":"G","weight":"1"},{"id":"B","weight":"3"}],"edges":[["R","G"],["G","B"],["R","B"]]})";

std::string k3() { return file("k3.json", k3_doc); }

}  // namespace

TEST_CASE("cohomology subcommand") {
  auto r = run("cohomology " + k3());
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["h1"]["divisors"] == json::array({"162"}));
  CHECK(j["h1"]["rank"] == 0);
  CHECK(j["h0"]["rank"] == 0);

  r = run("cohomology " + file("edge.json", R"({"vertices":[{"id":"u","weight":"4"},{"id":"v","weight":"6"}],"edges":[["u","v"]]})"));
  j = json::parse(r.out);
  CHECK(j["h0"]["rank"] == 1);
  CHECK(j["h1"]["divisors"] == json::array({"2"}));

  r = run("cohomology " + file("empty.json", R"({"vertices":[],"edges":[]})"));
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["h0"]["rank"] == 0);
  CHECK(j["h1"]["rank"] == 0);
  CHECK(j["h1"]["divisors"].empty());
}

TEST_CASE("forest subcommand") {
  const std::string dot = std::string(GCOH_TEST_TMP) + "/k3.dot";
  std::remove(dot.c_str());
  auto r = run("forest " + k3() + " --prime 3 --dot " + dot);
  REQUIRE(r.code == 0);
  auto j = json::parse(r.out);
  CHECK(j["nodes"].size() == 4);
  CHECK(j["torsion_exponents"] == json::array({4}));
  std::ifstream in(dot);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(text.find("digraph") != std::string::npos);

  r = run("forest " + file("tri.json", R"({"vertices":[{"id":"u","weight":"1"},{"id":"v","weight":"1"},{"id":"w","weight":"1"}],"edges":[["u","v"],["v","w"],["u","w"]]})") +
          " --prime 3");
  j = json::parse(r.out);
  CHECK(j["nodes"].empty());

  const std::string bdot = std::string(GCOH_TEST_TMP) + "/edge.dot";
  r = run("forest " + file("bip.json", R"({"vertices":[{"id":"u","weight":"3"},{"id":"v","weight":"9"}],"edges":[["u","v"]]})") +
          " --prime 3 --dot " + bdot);
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  bool inf = false;
  for (const auto& n : j["nodes"]) inf = inf || n["r_sup"] == "inf";
  CHECK(inf);
  std::ifstream bin(bdot);
  const std::string btext((std::istreambuf_iterator<char>(bin)), std::istreambuf_iterator<char>());
  CHECK(btext.find("∞") != std::string::npos);

  CHECK(run("forest " + k3() + " --prime 4").code == 2);
  CHECK(run("forest " + k3()).code == 2);
}

TEST_CASE("torsion, core and spanning-tree subcommands") {
  auto j = json::parse(run("torsion " + k3() + " --prime 3").out);
  CHECK(j["exponent"] == 4);
  CHECK(j["forest_exponents"] == json::array({4}));
  CHECK(j["torsion_order"] == "162");

  j = json::parse(run("core " + k3() + " --prime 3").out);
  CHECK(j["core_edges"] == json::array({"B-G", "G-R"}));
  CHECK(j["relation"]["applicable"] == true);
  CHECK(j["relation"]["exponent"] == 4);

  const auto c4 = file("c4.json",
                       R"({"vertices":[{"id":"A","weight":"3"},{"id":"B","weight":"3"},{"id":"C","weight":"3"},{"id":"D","weight":"3"}],"edges":[["A","B"],["B","C"],["C","D"],["D","A"]]})");
  auto r = run("spanning-tree " + c4 + " --prime 3");
  REQUIRE(r.code == 0);
  j = json::parse(r.out);
  CHECK(j["edges"] == json::array({"A-B", "A-D", "B-C"}));
  CHECK(j["exponent"] == 3);
  CHECK(run("spanning-tree " + k3() + " --prime 3").code == 2);
}

TEST_CASE("tropical subcommand") {
  const auto vals = file("vals.json", R"({"R":3,"G":0,"B":1})");
  auto r = run("tropical " + k3() + " --eval " + vals);
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["value"] == 4);
  CHECK(json::parse(run("tropical " + k3() + " --prime 3").out)["value"] == 4);

  const auto k4 = file("k4.json",
                       R"({"vertices":[{"id":"A","weight":"1"},{"id":"B","weight":"1"},{"id":"C","weight":"1"},{"id":"D","weight":"1"}],"edges":[["A","B"],["A","C"],["A","D"],["B","C"],["B","D"],["C","D"]]})");
  r = run("tropical " + k4 + " --complete-formula");
  REQUIRE(r.code == 0);
  const std::string expr = json::parse(r.out)["expression"];
  CHECK(expr == "((k[A] ⊕ k[B] ⊕ k[C] ⊕ k[D]) ⊙ ((k[A] ⊙ k[B] ⊙ k[C]) ⊕ (k[A] ⊙ k[B] ⊙ k[D]) ⊕ (k[A] ⊙ k[C] ⊙ k[D]) ⊕ (k[B] ⊙ k[C] ⊙ k[D])))");

  CHECK(run("tropical " + k3() + " --eval " + file("partial.json", R"({"R":3,"G":0})")).code == 2);
  CHECK(run("tropical " + k3() + " --prime 2").code == 2);
  CHECK(run("tropical " + k3() + " --max-vertices 2").code == 3);
  CHECK(run("tropical " + k4, "GCOH_MAX_SUBGRAPHS=1").code == 3);
  CHECK(run("tropical " + k4, "GCOH_MAX_SUBGRAPHS=lots").code == 2);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run("cohomology " + file("bad.json", "{")).code == 2);
  CHECK(run("cohomology /nonexistent.json").code == 2);
  CHECK(run("cohomology " + file("loop.json", R"({"vertices":[{"id":"a","weight":"1"}],"edges":[["a","a"]]})")).code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("verify subcommand") {
  auto a = run("verify --instances 30 --seed 5 --threads 3");
  REQUIRE(a.code == 0);
  CHECK(json::parse(a.out)["all_passed"] == true);
  const auto b = run("verify --instances 30 --seed 5 --threads 1");
  CHECK(a.out == b.out);
  const auto f = run("verify --instances 10 --inject-fault");
  CHECK(f.code == 4);
  CHECK(json::parse(f.out)["all_passed"] == false);
}

TEST_CASE("reports are deterministic") {
  CHECK(run("forest " + k3() + " --prime 3").out == run("forest " + k3() + " --prime 3").out);
  CHECK(run("tropical " + k3()).out == run("tropical " + k3()).out);
}
