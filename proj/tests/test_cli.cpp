#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hk/cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Invocation {
  int exit_code;
  std::string out;
  std::string err;
};

Invocation run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = hk::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    dir_ = fs::temp_directory_path() /
           ("hk-test-" + std::to_string(counter_++) + "-" +
            std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  ~TempDir() { fs::remove_all(dir_); }
  fs::path path() const { return dir_; }
  std::string file(const std::string& name, const std::string& content) const {
    fs::path p = dir_ / name;
    std::ofstream(p) << content;
    return p.string();
  }

 private:
  fs::path dir_;
  static inline int counter_ = 0;
};

const char* kMSquared =
    R"({"ring": {"kind":"regular","d":2,"p":2}, "ideal": {"gens": [[2,0],[1,1],[0,2]]}})";

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("ideal-info prints mu, ord, primality and colength") {
  TempDir tmp;
  auto cfg = tmp.file("cfg.json", kMSquared);
  auto r = run_cli({"ideal-info", "--config", cfg});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "mu,ord,m_primary,colength,gens\n"
                 "3,2,true,3,\"[[0,2],[1,1],[2,0]]\"\n");
}

TEST_CASE("ideal-info reports non-m-primary ideals without a colength") {
  TempDir tmp;
  auto cfg = tmp.file("cfg.json",
                      R"({"ring": {"kind":"regular","d":2,"p":2},
                          "ideal": {"gens": [[1,1]]}})");
  auto r = run_cli({"ideal-info", "--config", cfg});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("1,2,false,,") != std::string::npos);
}

TEST_CASE("hs-fit emits the sample table and the fitted coefficients") {
  TempDir tmp;
  auto cfg = tmp.file("cfg.json", kMSquared);
  auto r = run_cli({"hs-fit", "--config", cfg});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("record,index,value\n") == 0);
  CHECK(r.out.find("sample,3,21\n") != std::string::npos);
  CHECK(r.out.find("coeff,0,4\n") != std::string::npos);
  CHECK(r.out.find("coeff,1,1\n") != std::string::npos);
  CHECK(r.out.find("coeff,2,0\n") != std::string::npos);
  CHECK(r.out.find("postulation,,1\n") != std::string::npos);
}

TEST_CASE("beta rows are exactly 1 for m^2 and 0 for complete intersections") {
  TempDir tmp;
  auto cfg = tmp.file("cfg.json", kMSquared);
  auto r = run_cli({"beta", "--config", cfg});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("1,2,4,1,\n") != std::string::npos);
  CHECK(r.out.find("3,8,64,1,1\n") != std::string::npos);

  auto ci = tmp.file("ci.json",
                     R"({"ring": {"kind":"regular","d":2,"p":2},
                         "ideal": {"gens": [[3,0],[0,2]]}})");
  auto rc = run_cli({"beta", "--config", ci});
  CHECK(rc.exit_code == 0);
  CHECK(rc.out.find("1,2,0,0,\n") != std::string::npos);
  CHECK(rc.out.find("3,8,0,0,0\n") != std::string::npos);
}

TEST_CASE("check verdicts drive the exit code") {
  TempDir tmp;
  auto cfg = tmp.file("cfg.json",
                      R"({"ring": {"kind":"regular","d":2,"p":2},
                          "ideal": {"gens": [[2,0],[0,3]]},
                          "budgets": {"n": 3}})");
  auto wy = run_cli({"check", "wy", "--config", cfg});
  CHECK(wy.exit_code == 0);
  CHECK(wy.out.find("watanabe-yoshida:n=3,36,36,0,equality,false") != std::string::npos);

  auto mm = tmp.file("m2.json", kMSquared);
  auto nc = run_cli({"check", "northcott", "--config", mm});
  CHECK(nc.exit_code == 0);
  CHECK(nc.out.find("northcott-limit,1,1,0,equality,false") != std::string::npos);

  auto corrupted = run_cli({"check", "bound", "--config", mm, "--test-corrupt-lengths"});
  CHECK(corrupted.exit_code == 1);
}

TEST_CASE("json format mirrors the reports") {
  TempDir tmp;
  auto cfg = tmp.file("cfg.json", kMSquared);
  auto r = run_cli({"check", "northcott", "--config", cfg, "--format", "json"});
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["inequality"]["verdict"] == "equality");
  CHECK(j["beta"]["extrapolated"] == 1);
  CHECK(j["multiplicity"] == 4);
  CHECK(j["hilbert_kunz"] == 3);
}

TEST_CASE("usage and parse problems exit with code 2") {
  TempDir tmp;
  CHECK(run_cli({"ideal-info", "--config", (tmp.path() / "absent.json").string()})
            .exit_code == 2);
  auto bad = tmp.file("bad.json", "{not json");
  CHECK(run_cli({"ideal-info", "--config", bad}).exit_code == 2);
  auto unknown = tmp.file("unknown.json",
                          R"({"ring": {"kind":"regular","d":2,"p":2},
                              "ideal": {"gens": [[1,0],[0,1]]}, "bogus": 1})");
  CHECK(run_cli({"ideal-info", "--config", unknown}).exit_code == 2);
  auto nocheck = tmp.file("m.json", kMSquared);
  CHECK(run_cli({"check", "--config", nocheck}).exit_code == 2);
  CHECK(run_cli({"check", "nonsense", "--config", nocheck}).exit_code == 2);
  CHECK(run_cli({}).exit_code == 2);
}

TEST_CASE("hs-fit keeps the partial sample table when the fit cannot stabilize") {
  TempDir tmp;
  // postulation of (x^4, xy^3, y^4) is 2, so a window starting at k = 1
  // fits the wrong polynomial and verification fails
  auto cfg = tmp.file("cfg.json",
                      R"({"ring": {"kind":"regular","d":2,"p":2},
                          "ideal": {"gens": [[4,0],[1,3],[0,4]]},
                          "budgets": {"k_max": 7}})");
  auto r = run_cli({"hs-fit", "--config", cfg});
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("sample,1,13\n") != std::string::npos);
  CHECK(r.out.find("sample,7,") != std::string::npos);
  CHECK(r.out.find("coeff") == std::string::npos);
  CHECK(r.err.find("inconclusive") != std::string::npos);
}

TEST_CASE("hs-fit accepts a module annihilator") {
  TempDir tmp;
  auto cfg = tmp.file("cfg.json",
                      R"({"ring": {"kind":"regular","d":2,"p":2},
                          "ideal": {"gens": [[2,0],[1,1],[0,2]]},
                          "module": {"annihilator": [[1,0]]}})");
  auto r = run_cli({"hs-fit", "--config", cfg});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("sample,3,6\n") != std::string::npos);  // length 2k
  CHECK(r.out.find("coeff,0,0\n") != std::string::npos);
  CHECK(r.out.find("coeff,1,-2\n") != std::string::npos);
}

TEST_CASE("the check statement can come from the config") {
  TempDir tmp;
  auto cfg = tmp.file("cfg.json",
                      R"({"ring": {"kind":"regular","d":2,"p":2},
                          "ideal": {"gens": [[2,0],[1,1],[0,2]]},
                          "check": "northcott"})");
  auto r = run_cli({"check", "--config", cfg});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("northcott-limit") != std::string::npos);
}

TEST_CASE("paranoid mode cross-checks without changing results") {
  TempDir tmp;
  auto cfg = tmp.file("cfg.json", kMSquared);
  auto plain = run_cli({"ideal-info", "--config", cfg});
  auto paranoid = run_cli({"ideal-info", "--config", cfg, "--paranoid"});
  CHECK(paranoid.exit_code == 0);
  CHECK(paranoid.out == plain.out);
}

TEST_CASE("budget exhaustion exits with code 3") {
  TempDir tmp;
  auto cfg = tmp.file("cfg.json",
                      R"({"ring": {"kind":"toric2","rays":[[1,0],[0,1]],
                                   "lattice":[[2,0],[1,1]],"p":2},
                          "ideal": {"gens": [[2,0],[1,1],[0,2]]},
                          "budgets": {"E": 6, "enumeration_cap": 50}})");
  auto r = run_cli({"ehk", "--config", cfg});
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("inconclusive") != std::string::npos);
}

TEST_CASE("sweep writes one deterministic file per family and command") {
  TempDir tmp;
  auto cfg = tmp.file("sweep.json", R"({
    "budgets": {"E": 2, "k_max": 9},
    "families": [
      {"name":"boxes","type":"ci","ring":{"kind":"regular","d":2,"p":2},
       "a_max":2,"b_max":2},
      {"name":"none","type":"explicit","ring":{"kind":"regular","d":2,"p":2},
       "ideals":[]}
    ],
    "commands": ["check-northcott"]})");
  auto dir1 = (tmp.path() / "s1").string();
  auto dir4 = (tmp.path() / "s4").string();
  auto r1 = run_cli({"sweep", "--config", cfg, "--out", dir1, "--jobs", "1"});
  auto r4 = run_cli({"sweep", "--config", cfg, "--out", dir4, "--jobs", "4"});
  CHECK(r1.exit_code == 0);
  CHECK(r4.exit_code == 0);

  auto boxes = read_file(fs::path(dir1) / "boxes__check-northcott.csv");
  CHECK(boxes.find("boxes,a1b1,ok,northcott-limit,0,0,0,equality,false,\n") !=
        std::string::npos);
  // 4 ideals => header + 4 rows
  CHECK(std::count(boxes.begin(), boxes.end(), '\n') == 5);

  auto empty = read_file(fs::path(dir1) / "none__check-northcott.csv");
  CHECK(empty == "family,item,status,name,lhs,rhs,slack,verdict,numerical,error\n");

  CHECK(read_file(fs::path(dir1) / "boxes__check-northcott.csv") ==
        read_file(fs::path(dir4) / "boxes__check-northcott.csv"));
}

TEST_CASE("sweep marks failing jobs and exits 1") {
  TempDir tmp;
  auto cfg = tmp.file("sweep.json", R"({
    "budgets": {"E": 2, "k_max": 9},
    "families": [
      {"name":"mixed","type":"explicit","ring":{"kind":"regular","d":2,"p":2},
       "ideals":[[[1,0],[0,1]], [[1,1]]]}
    ],
    "commands": ["ideal-info","check-northcott"]})");
  auto dir = (tmp.path() / "out").string();
  auto r = run_cli({"sweep", "--config", cfg, "--out", dir});
  CHECK(r.exit_code == 1);
  auto info = read_file(fs::path(dir) / "mixed__ideal-info.csv");
  // ideal-info itself succeeds on the non-m-primary ideal
  CHECK(info.find("mixed,i1,ok,1,2,false,,") != std::string::npos);
  auto nc = read_file(fs::path(dir) / "mixed__check-northcott.csv");
  CHECK(nc.find("mixed,i0,ok,") != std::string::npos);
  CHECK(nc.find("mixed,i1,error,") != std::string::npos);
  CHECK(nc.find("infinite length") != std::string::npos);
}
