#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "qcover/constructions.hpp"
#include "qcover/design_io.hpp"

using namespace qcover;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run qc(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string result_line(const std::string& out) {
  const auto at = out.rfind("RESULT: ");
  if (at == std::string::npos) return {};
  return out.substr(at, out.find('\n', at) - at);
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("qcover_cli_" + std::to_string(std::rand()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("construct and verify the cyclic C_2[7,3,2]") {
  TempDir dir;
  const auto file = dir / "c.design";
  auto r = qc({"construct", "lemma6", "-o", file});
  CHECK(r.code == 0);
  CHECK(result_line(r.out) == "RESULT: construct kind=lemma6 q=2 n=7 k=3 r=2 verdict=verified size=399");
  CHECK(r.out.find("targets: 2667") != std::string::npos);
  CHECK(r.out.find("uncovered: 0") != std::string::npos);
  CHECK(load_design(file) == cyclic_covering_7_3_2());

  for (const char* strategy : {"auto", "expand", "scan"}) {
    r = qc({"verify", file, "--r", "2", "--strategy", strategy});
    CHECK(r.code == 0);
    CHECK(result_line(r.out) == "RESULT: verify file=" + file + " mode=covering r=2 verdict=pass size=399");
  }
  r = qc({"verify", file, "--mode", "steiner", "--r", "2"});
  CHECK(r.code == 1);
  CHECK(result_line(r.out).find("verdict=fail") != std::string::npos);
}

TEST_CASE("mutated design files are rejected") {
  TempDir dir;
  const auto file = dir / "c.design";
  REQUIRE(qc({"construct", "lemma6", "-o", file}).code == 0);
  const std::string text = slurp(file);

  // dropping a block: the exit code follows the coverage report
  std::string dropped = text;
  const auto last = dropped.rfind('\n', dropped.size() - 2);
  dropped.erase(last + 1);
  spit(dir / "d.design", dropped);
  auto r = qc({"verify", dir / "d.design", "--r", "2"});
  CHECK(r.out.find("size=398") != std::string::npos);
  const bool covered = r.out.find("uncovered: 0\n") != std::string::npos;
  CHECK(r.code == (covered ? 0 : 1));
  CHECK(!covered);

  std::string bad_digit = text;
  bad_digit[bad_digit.rfind('\n', bad_digit.size() - 2) + 1] = '2';
  spit(dir / "e.design", bad_digit);
  r = qc({"verify", dir / "e.design", "--r", "2"});
  CHECK(r.code == 2);
  CHECK(result_line(r.out) == "RESULT: error verdict=invalid size=0");

  std::string bad_header = text;
  bad_header.replace(bad_header.find("k=3"), 3, "k=4");
  spit(dir / "f.design", bad_header);
  CHECK(qc({"verify", dir / "f.design", "--r", "2"}).code == 2);

  CHECK(qc({"verify", dir / "missing.design", "--r", "2"}).code == 2);
  CHECK(qc({"verify", file, "--mode", "nonsense", "--r", "2"}).code == 2);
  CHECK(qc({"verify", file, "--r", "2", "--strategy", "fast"}).code == 2);
  CHECK(qc({"verify", file}).code == 2);
}

TEST_CASE("construct kinds") {
  TempDir dir;
  auto r = qc({"construct", "spread", "--k", "2", "--n", "4", "-o", dir / "s.design"});
  CHECK(r.code == 0);
  CHECK(result_line(r.out) == "RESULT: construct kind=spread q=2 k=2 n=4 verdict=verified size=5");
  r = qc({"construct", "spread", "--k", "3", "--n", "7"});
  CHECK(r.code == 2);
  CHECK(result_line(r.out) == "RESULT: error verdict=invalid size=0");
  CHECK(qc({"construct", "spread", "--k", "2", "--n", "4", "--modulus", "1,0,0,1,1"}).code == 0);
  CHECK(qc({"construct", "spread", "--k", "2", "--n", "4", "--modulus", "1,0,1,0,1"}).code == 2);
  CHECK(qc({"construct", "spread", "--k", "2", "--n", "4", "--modulus", "1,x"}).code == 2);
  CHECK(qc({"construct", "spread", "--k", "2"}).code == 2);

  r = qc({"construct", "lift", "--in", dir / "s.design", "--delta", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("size=5") != std::string::npos);

  r = qc({"construct", "partial-spread", "--rho", "3", "--n", "7"});
  CHECK(r.code == 0);
  CHECK(r.out.find("point partition: yes") != std::string::npos);
  CHECK(r.out.find("size=16") != std::string::npos);

  r = qc({"construct", "line-covering", "--q", "3", "--n", "7", "--k", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("size=274") != std::string::npos);

  r = qc({"construct", "turan-dual", "--n", "5", "--k", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("size=7") != std::string::npos);
  CHECK(qc({"construct", "turan-dual", "--n", "5", "--k", "5"}).code == 2);

  REQUIRE(qc({"construct", "turan-dual", "--n", "4", "--k", "2", "-o", dir / "t.design"}).code == 0);
  r = qc({"construct", "recursive", "--s1", dir / "s.design", "--s2", dir / "t.design", "--r", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("size=27") != std::string::npos);

  r = qc({"construct", "trivial", "--n", "3", "--r", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("size=7") != std::string::npos);

  CHECK(qc({"construct", "greedy", "--n", "4", "--k", "3", "--r", "2"}).code == 0);
  r = qc({"construct", "greedy", "--n", "12", "--k", "6", "--r", "3"});
  CHECK(r.code == 3);
  CHECK(result_line(r.out) == "RESULT: error verdict=budget size=0");

  CHECK(qc({"construct", "mystery"}).code == 2);
}

TEST_CASE("file round trip matches the in-memory design") {
  TempDir dir;
  REQUIRE(qc({"construct", "line-covering", "--n", "7", "--k", "3", "-o", dir / "l.design"}).code == 0);
  CHECK(load_design(dir / "l.design") == optimal_line_covering(2, 7, 3));

  REQUIRE(qc({"dualize", dir / "l.design", "-o", dir / "l1.design"}).code == 0);
  auto r = qc({"dualize", dir / "l1.design", "-o", dir / "l2.design"});
  CHECK(r.code == 0);
  CHECK(result_line(r.out).find("k=3 verdict=ok size=19") != std::string::npos);
  CHECK(slurp(dir / "l2.design") == slurp(dir / "l.design"));
}

TEST_CASE("expand and derive") {
  TempDir dir;
  REQUIRE(qc({"construct", "trivial", "--n", "3", "--r", "2", "-o", dir / "t.design"}).code == 0);
  auto r = qc({"expand", dir / "t.design", "-o", dir / "t.sys"});
  CHECK(r.code == 0);
  CHECK(result_line(r.out) == "RESULT: expand file=" + (dir / "t.design") + " v=8 verdict=verified size=14");
  CHECK(load_set_system(dir / "t.sys").size() == 14);

  REQUIRE(qc({"construct", "lemma6", "-o", dir / "c.design"}).code == 0);
  r = qc({"expand", dir / "c.design"});
  CHECK(r.code == 1);
  CHECK(result_line(r.out) == "RESULT: error verdict=failed size=0");

  REQUIRE(qc({"construct", "trivial", "--n", "4", "--r", "2", "-o", dir / "u.design"}).code == 0);
  r = qc({"derive", dir / "u.design", "--point", "1000", "-o", dir / "v.design"});
  CHECK(r.code == 0);
  CHECK(r.out.find("size=7") != std::string::npos);
  CHECK(load_design(dir / "v.design").n() == 3);
  CHECK(qc({"derive", dir / "u.design", "--point", "0000"}).code == 2);
  CHECK(qc({"derive", dir / "u.design", "--point", "100"}).code == 2);
}

TEST_CASE("bounds") {
  auto r = qc({"bounds", "--filter", "7,3,2"});
  CHECK(r.code == 0);
  CHECK(result_line(r.out) == "RESULT: bounds q=2 n=7 k=3 r=2 lower=381 upper=399 verdict=open size=399");
  CHECK(r.out.find("7,3,2,381,") != std::string::npos);
  CHECK(r.out.find("construction:cyclic-399") != std::string::npos);

  r = qc({"bounds", "--filter", "5,3,2"});
  CHECK(result_line(r.out) == "RESULT: bounds q=2 n=5 k=3 r=2 lower=27 upper=27 verdict=exact size=27");
  CHECK(r.out.find(",recursive,yes") != std::string::npos);

  r = qc({"bounds", "--q", "3", "--n", "5", "--csv"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("n,k,r,lower,", 0) == 0);
  CHECK(result_line(r.out).find("verdict=consistent") != std::string::npos);

  CHECK(qc({"bounds", "--q", "5"}).code == 2);
  CHECK(qc({"bounds", "--n", "13"}).code == 2);
  CHECK(qc({"bounds", "--filter", "7,3"}).code == 2);
  CHECK(qc({"bounds", "--filter", "7,3,2,1"}).code == 2);
  CHECK(qc({"bounds", "--n", "6", "--filter", "7,3,2"}).code == 2);
}

TEST_CASE("argument handling") {
  CHECK(qc({}).code == 2);
  CHECK(qc({"frobnicate"}).code == 2);
  CHECK(qc({"--help"}).code == 0);
  CHECK(qc({"construct", "--help"}).code == 0);
  CHECK(qc({"bounds", "--n", "seven"}).code == 2);

  const auto a = qc({"construct", "greedy", "--n", "5", "--k", "3", "--r", "2"});
  const auto b = qc({"construct", "greedy", "--n", "5", "--k", "3", "--r", "2"});
  CHECK(a.out == b.out);

  ::setenv("QCOVER_WORKERS", "zero", 1);
  CHECK(qc({"bounds", "--filter", "5,3,2"}).code == 2);
  ::setenv("QCOVER_WORKERS", "3", 1);
  const auto c = qc({"construct", "greedy", "--n", "5", "--k", "3", "--r", "2"});
  CHECK(c.code == 0);
  CHECK(c.out == a.out);
  ::unsetenv("QCOVER_WORKERS");
}

TEST_CASE("reproduce") {
  const auto r = qc({"reproduce"});
  CHECK(r.code == 0);
  CHECK(result_line(r.out) == "RESULT: reproduce verdict=pass size=9");
}
