// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "ndpp/kernel.hpp"
#include "ndpp/report.hpp"

using namespace ndpp;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run call(std::vector<std::string> args) {
  args.insert(args.begin(), "ndpp");
  std::ostringstream out, err;
  Run r;
  r.code = app::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "ndpp_cli_tests";
  fs::create_directories(dir);
  return (dir / name).string();
}

Json strip_timing(Json j) {
  j.erase("timing");
  return j;
}

}  // namespace

TEST_CASE("gen skew-block writes the block kernel") {
  const auto path = scratch("blocks.txt");
  const Run r = call({"gen", "--kind", "skew-block", "--c", "4,3,2", "--x", "100,200,300",
                      "--out", path});
  REQUIRE(r.code == app::kOk);
  const Kernel k = read_kernel_file(path);
  CHECK(k.n() == 6);
  CHECK(principal_minor(k, IndexSet{0, 1}) == doctest::Approx(10016.0));
  CHECK(k(0, 1) == 100.0);
  CHECK(k(1, 0) == -100.0);
  CHECK(k(0, 2) == 0.0);
}

TEST_CASE("gen identity and low-rank kernels") {
  const auto id = scratch("identity.txt");
  REQUIRE(call({"gen", "--kind", "sym-psd", "--n", "4", "--identity", "--out", id}).code == 0);
  CHECK((read_kernel_file(id).entries() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

  const auto lr = scratch("lowrank.txt");
  REQUIRE(call({"gen", "--kind", "lowrank-npsd", "--n", "8", "--d", "3", "--seed", "1", "--out",
                lr}).code == 0);
  const Kernel k = read_kernel_file(lr);
  REQUIRE(k.has_low_rank());
  const Matrix rebuilt = k.low_rank()->b * k.low_rank()->c * k.low_rank()->b.transpose();
  CHECK((rebuilt - k.entries()).cwiseAbs().maxCoeff() <= 1e-12 * (1 + k.max_abs()));

  const Run to_stdout = call({"gen", "--kind", "random-npsd", "--n", "3", "--seed", "2"});
  CHECK(to_stdout.code == 0);
  CHECK(to_stdout.out.rfind("3\n", 0) == 0);
}

TEST_CASE("gen rejects invalid parameters with the usage code") {
  CHECK(call({"gen", "--kind", "skew-block", "--c", "2,3", "--x", "100,200"}).code == app::kUsage);
  CHECK(call({"gen", "--kind", "skew-block", "--c", "4,3", "--x", "20,200"}).code == app::kUsage);
  CHECK(call({"gen", "--kind", "nope"}).code == app::kUsage);
  CHECK(call({"gen", "--kind", "random-npsd"}).code == app::kUsage);
  CHECK(call({}).code == app::kUsage);
}

TEST_CASE("map reports and cross-checks") {
  const auto path = scratch("blocks_map.txt");
  call({"gen", "--kind", "skew-block", "--c", "4,3,2", "--x", "100,200,300", "--out", path});
  const Run r = call({"map", "--kernel", path, "--k", "2", "--r", "2", "--oracle"});
  REQUIRE(r.code == app::kOk);
  const Json j = Json::parse(r.out);
  CHECK(j["results"]["set"] == Json::array({4, 5}));
  CHECK(j["results"]["oracle"]["set"] == Json::array({4, 5}));
  CHECK(j["results"]["oracle"]["bound_ok"] == true);
  CHECK(j.contains("timing"));

  const Run stuck = call({"map", "--kernel", path, "--k", "2", "--r", "1", "--init", "standard"});
  REQUIRE(stuck.code == app::kOk);
  CHECK(Json::parse(stuck.out)["results"]["set"] == Json::array({0, 1}));

  const auto id = scratch("identity_map.txt");
  call({"gen", "--kind", "sym-psd", "--n", "5", "--identity", "--out", id});
  const Run one = call({"map", "--kernel", id, "--k", "3"});
  CHECK(Json::parse(one.out)["results"]["value"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("map exit codes") {
  CHECK(call({"map", "--kernel", scratch("missing.txt"), "--k", "2"}).code == app::kUsage);
  const auto id = scratch("identity_codes.txt");
  call({"gen", "--kind", "sym-psd", "--n", "3", "--identity", "--out", id});
  CHECK(call({"map", "--kernel", id, "--k", "7"}).code == app::kUsage);
  CHECK(call({"map", "--kernel", id, "--k", "2", "--zeta", "1.5"}).code == app::kUsage);

  const auto zero = scratch("zero.txt");
  {
    std::ofstream f(zero);
    f << "3\n0 0 0\n0 0 0\n0 0 0\n";
  }
  const Run inf = call({"map", "--kernel", zero, "--k", "2"});
  CHECK(inf.code == app::kInfeasible);
  CHECK(Json::parse(inf.out)["error"]["type"] == "infeasible");
}

TEST_CASE("verify suites") {
  const auto id = scratch("identity_verify.txt");
  call({"gen", "--kind", "sym-psd", "--n", "6", "--identity", "--out", id});
  const Run ex = call({"verify", "--kernel", id, "--k", "2", "--suite", "exchange"});
  REQUIRE(ex.code == app::kOk);
  const Json je = Json::parse(ex.out)["results"]["exchange"];
  CHECK(je["pair_exchange_failures"] == 0);
  CHECK(je["max_pair_beta"].get<double>() == doctest::Approx(1.0));

  const auto rnd = scratch("npsd7.txt");
  call({"gen", "--kind", "random-npsd", "--n", "7", "--seed", "5", "--out", rnd});
  const Run walk = call({"verify", "--kernel", rnd, "--k", "3", "--suite", "walk", "--seed", "3"});
  CHECK(walk.code == app::kOk);
  CHECK(Json::parse(walk.out)["results"]["walk"]["passed"] == true);

  const Run all = call({"verify", "--kernel", rnd, "--k", "2", "--seed", "1"});
  CHECK(all.code == app::kOk);
  CHECK(Json::parse(all.out)["summary"]["passed"] == 3);

  const auto big = scratch("npsd20.txt");
  call({"gen", "--kind", "random-npsd", "--n", "20", "--seed", "1", "--out", big});
  CHECK(call({"verify", "--kernel", big, "--k", "4", "--suite", "exchange"}).code ==
        app::kCapacity);
  CHECK(call({"verify", "--kernel", rnd, "--k", "2", "--suite", "bogus"}).code == app::kUsage);
}

TEST_CASE("identical commands give identical reports apart from timing") {
  const auto rnd = scratch("npsd_det.txt");
  call({"gen", "--kind", "random-npsd", "--n", "7", "--seed", "9", "--out", rnd});
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"map", "--kernel", rnd, "--k", "3", "--oracle"},
        std::vector<std::string>{"verify", "--kernel", rnd, "--k", "2", "--seed", "4",
                                 "--steps", "2000"}}) {
    const Run a = call(args);
    const Run b = call(args);
    CHECK(strip_timing(Json::parse(a.out)).dump() == strip_timing(Json::parse(b.out)).dump());
  }
  const auto f1 = scratch("gen_a.txt");
  const auto f2 = scratch("gen_b.txt");
  call({"gen", "--kind", "random-npsd", "--n", "5", "--seed", "3", "--out", f1});
  call({"gen", "--kind", "random-npsd", "--n", "5", "--seed", "3", "--out", f2});
  std::ifstream a(f1), b(f2);
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
}
