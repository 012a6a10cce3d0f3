#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#include "restind/report.hpp"

using namespace restind;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  const std::string cmd = std::string(RESTIND_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int w = pclose(p);
  r.status = WIFEXITED(w) ? WEXITSTATUS(w) : -1;
  return r;
}

fs::path fresh_dir(const std::string& name) {
  auto d = fs::temp_directory_path() / ("restind-test-" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("--help").status, 0);
  EXPECT_EQ(run("").status, 1);
  EXPECT_EQ(run("check-t --group S4").status, 1);           // --n missing
  EXPECT_EQ(run("check-t --group Q99 --n G").status, 1);    // unknown group
  EXPECT_EQ(run("chebotarev --poly 'x^2 1' --x 10").status, 1);
  EXPECT_EQ(run("zfr --logD 10 --epsilon 1.5 --order-G 6 --x 100").status, 1);
  EXPECT_EQ(run("malle --group S3 --action explicit --points 3 --images '(1,2)' '(1,2,3)'").status, 1);
  EXPECT_EQ(run("check-t --group S4 --n A").status, 0);
}

TEST(Cli, ReportShape) {
  auto r = run("check-t --group S4 --n derived --no-shortcuts");
  ASSERT_EQ(r.status, 0);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["schema"], kSchemaVersion);
  EXPECT_EQ(j["command"], "check-t");
  EXPECT_EQ(j["result"]["N"]["order"], 12);
  EXPECT_EQ(j["result"]["decision"]["verdict"], "HOLDS");
  EXPECT_EQ(j["result"]["decision"]["rank"], j["result"]["decision"]["target_rank"]);
  EXPECT_FALSE(j.contains("timing"));
}

TEST(Cli, Deterministic) {
  for (const char* args : {"check-t --group S5 --n G --no-shortcuts", "chartab --group D4", "malle --group C6 --action regular",
                           "chebotarev --poly x^4+x+1 --x 5000", "zfr --logD 50 --epsilon 0.3 --order-G 24 --x 1e9"}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.status, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
  auto one = run("sweep --family order:16 --jobs 1"), three = run("sweep --family order:16 --jobs 3");
  EXPECT_EQ(one.status, 0);
  EXPECT_EQ(one.out, three.out);
}

TEST(Cli, TableRoundTrip) {
  auto r = run("chartab --group S4");
  ASSERT_EQ(r.status, 0);
  auto j = Json::parse(r.out)["result"];
  auto G = group_from_json(j["group"]);
  auto t = table_from_json(j, G);
  auto ref = character_table(G);
  ASSERT_EQ(t->size(), ref->size());
  for (std::size_t i = 0; i < t->size(); ++i) EXPECT_TRUE((*t)[i].values == (*ref)[i].values);
  EXPECT_EQ(j["orthogonality"], true);
}

TEST(Cli, TamperedTableRejected) {
  auto G = named_group("D4");
  Json j = table_json(*character_table(G));
  j["irreducibles"][1]["values"][0][0] = "2/1";
  EXPECT_THROW(table_from_json(j, G), Error);
  j = table_json(*character_table(G));
  j["conductor"] = 8;
  EXPECT_THROW(table_from_json(j, G), Error);
}

TEST(Cli, CacheRevalidation) {
  const auto dir = fresh_dir("cache");
  const std::string flag = "--cache-dir " + dir.string() + " ";
  const auto plain = run("chartab --group A4");
  auto first = run(flag + "chartab --group A4");
  ASSERT_EQ(first.status, 0);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  ASSERT_EQ(files.size(), 1u);

  // corrupt the stored degrees; the entry must be rejected and rewritten
  Json stored = Json::parse(std::ifstream(files[0]));
  stored["table"]["irreducibles"][0]["values"][0][0] = "3/1";
  std::ofstream(files[0]) << stored.dump();
  auto second = run(flag + "chartab --group A4");
  EXPECT_EQ(second.status, 0);
  Json rewritten = Json::parse(std::ifstream(files[0]));
  EXPECT_EQ(rewritten["table"]["irreducibles"][0]["values"][0][0], "1/1");

  // garbage is recomputed too
  std::ofstream(files[0]) << "not json";
  auto third = run(flag + "chartab --group A4");

  // config echoes whether a cache is used; the result must not depend on it
  auto result = [](const std::string& s) { return Json::parse(s)["result"].dump(); };
  EXPECT_EQ(result(first.out), result(plain.out));
  EXPECT_EQ(result(second.out), result(plain.out));
  EXPECT_EQ(result(third.out), result(plain.out));
  fs::remove_all(dir);
}

TEST(Cli, SweepResumesFromCache) {
  const auto dir = fresh_dir("sweep");
  const std::string flag = "--cache-dir " + dir.string() + " ";
  auto a = run(flag + "sweep --family transitive:4");
  ASSERT_EQ(a.status, 0);
  std::size_t entries = 0;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().filename().string().rfind("sweep-", 0) == 0) ++entries;
  EXPECT_EQ(entries, transitive_groups(4).size());  // one entry per group of degree <= 4
  EXPECT_EQ(Json::parse(a.out)["result"]["summary"]["groups"], entries);
  auto b = run(flag + "sweep --family transitive:4");
  EXPECT_EQ(a.out, b.out);
  fs::remove(*std::find_if(fs::directory_iterator(dir), fs::directory_iterator(), [](const auto& e) {
    return e.path().filename().string().rfind("sweep-", 0) == 0;
  }));
  auto c = run(flag + "sweep --family transitive:4");
  EXPECT_EQ(a.out, c.out);
  fs::remove_all(dir);
}

TEST(Cli, ChebotarevTable) {
  auto r = run("chebotarev --poly x^3-2 --x 1000 --report table");
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("cycle type"), std::string::npos);
  EXPECT_NE(r.out.find("tally.pi_x: 168"), std::string::npos);
}

TEST(Cli, ZfrLogX) {
  auto r = run("zfr --logD 100 --epsilon 0.5 --order-G 120 --log-x 1e6");
  ASSERT_EQ(r.status, 0);
  auto j = Json::parse(r.out)["result"];
  EXPECT_EQ(j["envelope"]["above_threshold"], true);
  EXPECT_EQ(j["eta"]["agree_1e-6"], true);
}
