#include <doctest.h>

#include <sstream>

#include "cli.hpp"
#include "tdga/serialize.hpp"

using namespace tdga;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("dga prints the unknot") {
    Result r = run({"dga", "", "--strands", "1", "--format", "text"});
    CHECK(r.code == 0);
    CHECK(r.out == "∂⁻c = U + λ + λμV + μ\n∂⁻e = 0\n");
  }

  TEST_CASE("sl") {
    CHECK(run({"sl", "-1"}).out == "-3\n");
    CHECK(run({"sl", "1"}).out == "-1\n");
    CHECK(run({"sl", "", "--strands", "1"}).out == "-1\n");
    CHECK(run({"sl", "1 1"}).code == 1);
  }

  TEST_CASE("negative braid words are positional") {
    CHECK(run({"sl", "-1 -1 -1"}).out == "-5\n");
    CHECK(run({"sl", "--strands", "2", "-1"}).out == "-3\n");
    CHECK(run({"sl", "--strands", "3", "-1"}).code == 1);
    Result r = run({"aug", "-1", "--spec", "doublehat", "--lambda", "-1", "--mu", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "0\n");
  }

  TEST_CASE("aug text and json") {
    CHECK(run({"aug", "", "--strands", "1", "--spec", "doublehat", "--p", "3", "--lambda", "-1",
               "--mu", "1"})
              .out == "1\n");
    Result j = run({"aug", "1", "--spec", "unfiltered", "--p", "5", "--lambda", "2", "--mu", "3",
                    "--format", "json"});
    REQUIRE(j.code == 0);
    const Json doc = Json::parse(j.out);
    CHECK(doc.at("braid") == "1");
    CHECK(doc.at("specialization") == "unfiltered");
    CHECK(doc.at("p") == 5);
    CHECK(doc.at("assignments").at("lambda") == Json::array({2}));
    CHECK(doc.at("assignments").at("mu") == Json::array({3}));
    const FilteredDGA u = specialize(build_filtered_dga(parse_braid("1")), 1, 1);
    CHECK(doc.at("count") == count_augmentations(u, {5, {2}, {3}, {}, {}}));
  }

  TEST_CASE("aug methods agree") {
    for (const char* spec : {"hat", "doublehat", "unfiltered"}) {
      CAPTURE(spec);
      Result braid = run({"aug", "1 -2 1", "--spec", spec, "--all-units", "--format", "json"});
      Result dga = run({"aug", "1 -2 1", "--spec", spec, "--all-units", "--format", "json",
                        "--method", "dga"});
      CHECK(braid.code == 0);
      CHECK(braid.out == dga.out);
    }
    Result inf_b = run({"aug", "-1", "--spec", "infinity", "--all-units"});
    Result inf_d = run({"aug", "-1", "--spec", "infinity", "--all-units", "--method", "dga"});
    CHECK(inf_b.out == inf_d.out);
    CHECK(std::count(inf_b.out.begin(), inf_b.out.end(), '\n') == 16);
    Result minus = run({"aug", "1", "--lambda", "1", "--mu", "2", "--U", "0", "--V", "1"});
    Result hat = run({"aug", "1", "--spec", "hat", "--lambda", "1", "--mu", "2"});
    CHECK(minus.out == hat.out);
  }

  TEST_CASE("aug all-units json rows") {
    Result r = run({"aug", "", "--strands", "1", "--spec", "hat", "--all-units", "--format",
                    "json"});
    const Json rows = Json::parse(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == Json::parse(R"({"lambda":[1],"mu":[1],"count":1})"));
  }

  TEST_CASE("aug flag validation") {
    CHECK(run({"aug", "1", "--spec", "hat", "--lambda", "1"}).code == 1);
    CHECK(run({"aug", "1", "--spec", "hat", "--lambda", "1", "--mu", "1", "--U", "1"}).code == 1);
    CHECK(run({"aug", "1", "--spec", "hat", "--p", "4", "--lambda", "1", "--mu", "1"}).code == 1);
    CHECK(run({"aug", "1", "--lambda", "1", "--mu", "1"}).code == 1);
    CHECK(run({"aug", "1 1", "--spec", "infinity", "--all-units"}).code == 1);
    CHECK(run({"aug", "1", "--spec", "bogus"}).code == 1);
  }

  TEST_CASE("unknown flags and bad input") {
    Result r = run({"dga", "1", "--frobnicate"});
    CHECK(r.code == 1);
    CHECK_FALSE(r.err.empty());
    CHECK(run({"dga", "1 0"}).code == 1);
    CHECK(run({"dga", "1 x"}).err.find("'x'") != std::string::npos);
    CHECK(run({"nonsense", "1"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"sl", "1", "--p", "3"}).code == 1);
  }

  TEST_CASE("infinity and check") {
    CHECK(run({"infinity", "1 1"}).code == 1);
    Result inf = run({"infinity", "-1"});
    CHECK(inf.code == 0);
    CHECK(inf.out.find("∂∞c11 = ") != std::string::npos);
    Result c = run({"check", "1 -2 1"});
    CHECK(c.code == 0);
    CHECK(c.out.rfind("ok:", 0) == 0);
    Result cj = run({"check", "1", "--spec", "hat", "--format", "json"});
    CHECK(Json::parse(cj.out).at("pass") == true);
  }

  TEST_CASE("specialize") {
    Result r = run({"specialize", "", "--strands", "1", "--spec", "doublehat"});
    CHECK(r.code == 0);
    CHECK(r.out.find("c = λ + μ\n") != std::string::npos);
    CHECK(run({"specialize", "1"}).code == 1);
  }

  TEST_CASE("json output round-trips byte for byte") {
    for (const char* w : {"1", "-1", "1 1", "1 -2"}) {
      Result r = run({"dga", w, "--format", "json"});
      REQUIRE(r.code == 0);
      CHECK(dump(to_json(dga_from_json(Json::parse(r.out)))) == r.out);
    }
  }
}
