#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <degenpoly/serialization.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

using degenpoly::Rational;
using degenpoly::SequenceTable;
using degenpoly::Var;
using nlohmann::json;

namespace {

struct CliResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

CliResult run_cli(const std::string& args, const std::string& env_prefix = "") {
    static int counter = 0;
    const auto dir = std::filesystem::temp_directory_path();
    const std::string tag = std::to_string(::getpid()) + "_" + std::to_string(counter++);
    const auto out_path = dir / ("degenpoly_cli_out_" + tag);
    const auto err_path = dir / ("degenpoly_cli_err_" + tag);
    std::string cmd;
    if (!env_prefix.empty()) cmd += env_prefix + " ";
    cmd += std::string("'") + DEGENPOLY_CLI_PATH + "' " + args;
    cmd += " > '" + out_path.string() + "' 2> '" + err_path.string() + "'";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::filesystem::remove(out_path);
    std::filesystem::remove(err_path);
    return r;
}

}  // namespace

TEST_CASE("compute emits a parseable, byte-deterministic table") {
    const CliResult first = run_cli("compute --k 2 --n-max 4");
    const CliResult second = run_cli("compute --k 2 --n-max 4");
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);
    const json j = json::parse(first.out);
    const SequenceTable parsed = degenpoly::table_from_json(j);
    CHECK(parsed == degenpoly::build_sequence_table(2, 4));
    // Output is the canonical dump of its own parse.
    CHECK(degenpoly::dump_json(j) == first.out);
}

TEST_CASE("compute honors --eval") {
    const CliResult r = run_cli("compute --k -1 --n-max 3 --eval lambda=1/2");
    REQUIRE(r.code == 0);
    SequenceTable expected = degenpoly::build_sequence_table(-1, 3);
    for (auto& e : expected.entries) e = e.substitute(Var::lambda, Rational(1, 2));
    CHECK(degenpoly::table_from_json(json::parse(r.out)) == expected);
}

TEST_CASE("compute csv matches the classical Bernoulli triangle at lambda=0") {
    const CliResult r = run_cli("compute --k 1 --n-max 2 --eval lambda=0 --format csv");
    REQUIRE(r.code == 0);
    CHECK(r.out ==
          "n,x^0,x^1,x^2\n"
          "0,1,0,0\n"
          "1,-1/2,1,0\n"
          "2,1/6,-1,1\n");
}

TEST_CASE("compute csv refuses two free variables") {
    const CliResult r = run_cli("compute --k 1 --n-max 2 --format csv");
    CHECK(r.code == 2);
    CHECK(r.err.find("error") != std::string::npos);
}

TEST_CASE("compute latex") {
    const CliResult r = run_cli("compute --k 1 --n-max 1 --format latex");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("\\begin{align*}") != std::string::npos);
    CHECK(r.out.find("\\beta_{1}(x\\mid\\lambda) &= x + \\frac{1}{2} \\lambda - \\frac{1}{2}") !=
          std::string::npos);
}

TEST_CASE("compute writes to --out") {
    const auto path = std::filesystem::temp_directory_path() /
                      ("degenpoly_table_" + std::to_string(::getpid()) + ".json");
    const CliResult r = run_cli("compute --k 3 --n-max 2 --out '" + path.string() + "'");
    REQUIRE(r.code == 0);
    CHECK(degenpoly::table_from_json(json::parse(slurp(path))) ==
          degenpoly::build_sequence_table(3, 2));
    std::filesystem::remove(path);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").code == 2);                       // subcommand required
    CHECK(run_cli("compute --n-max 3").code == 2);      // --k required
    CHECK(run_cli("compute --k 1 --n-max 3 --format xml").code == 2);
    CHECK(run_cli("verify --identity nope").code == 2);
    CHECK(run_cli("verify --variant as-printed").code == 2);   // needs --identity
    CHECK(run_cli("verify --all --identity T2").code == 2);    // mutually exclusive
    CHECK(run_cli("verify --identity T4 --d 0..2").code == 2); // d >= 1
    CHECK(run_cli("compute --k 1 --n-max 2 --eval bogus").code == 2);
    CHECK(run_cli("--help").code == 0);
}

TEST_CASE("verify single identity passes and reports") {
    const CliResult r = run_cli("verify --identity T5 --n-max 2");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["cases"].size() == 18);  // n 0..2, k -2..3
    CHECK(j["adjudications"].empty());
    CHECK_FALSE(j.contains("collapse_checks"));  // restricted run
    CHECK(r.err.find("18 cases, 0 mismatches; exit 0") != std::string::npos);
}

TEST_CASE("verify reports the rejected reading as a failure") {
    const CliResult r = run_cli("verify --identity T3 --variant as-printed --n-max 3 --k 2");
    CHECK(r.code == 1);
    const json j = json::parse(r.out);
    bool mismatch_with_witness = false;
    for (const auto& c : j["cases"]) {
        if (c["verdict"] == "mismatch") mismatch_with_witness = c["witness"].is_array();
    }
    CHECK(mismatch_with_witness);
}

TEST_CASE("verify flags an inconclusive adjudication with exit 3") {
    const CliResult r = run_cli("verify --identity T3 --n-max 1 --k 1");
    CHECK(r.code == 3);
    CHECK(r.err.find("multiple-variants-match") != std::string::npos);
}

TEST_CASE("verify --all is deterministic across thread counts") {
    const CliResult serial = run_cli("verify --all --n-max 4", "DEGENPOLY_THREADS=0");
    const CliResult parallel = run_cli("verify --all --n-max 4", "DEGENPOLY_THREADS=4");
    REQUIRE(serial.code == 0);
    REQUIRE(parallel.code == 0);
    CHECK(serial.out == parallel.out);
    const json j = json::parse(serial.out);
    CHECK(j.contains("collapse_checks"));
    CHECK(j["collapse_checks"]["k1"]["verdict"] == "equal");
}

TEST_CASE("verify report round trips byte-identically") {
    const CliResult r = run_cli("verify --identity T2 --n-max 5");
    REQUIRE(r.code == 0);
    CHECK(degenpoly::dump_json(json::parse(r.out)) == r.out);
}

TEST_CASE("verify --out moves the summary to stdout") {
    const auto path = std::filesystem::temp_directory_path() /
                      ("degenpoly_report_" + std::to_string(::getpid()) + ".json");
    const CliResult r = run_cli("verify --identity T1a --n-max 3 --out '" + path.string() + "'");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("exit 0") != std::string::npos);
    const json j = json::parse(slurp(path));
    CHECK(j["cases"].size() == 4);
    std::filesystem::remove(path);
}

TEST_CASE("verify csv format") {
    const CliResult r = run_cli("verify --identity T2 --n-max 1 --k 2 --format csv");
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("id,n,k,d,variant,verdict\n", 0) == 0);
    CHECK(r.out.find("T2,1,2,,,equal") != std::string::npos);
}

TEST_CASE("limit-check") {
    const CliResult r = run_cli("limit-check --n-max 6 --poly-n-max 4 --k -1..2");
    REQUIRE(r.code == 0);
    CHECK(r.out.find("plain family at lambda=0 vs classical, n<=6: ok") != std::string::npos);
    CHECK(r.out.find("order k=-1 at lambda=0 vs classical, n<=4: ok") != std::string::npos);
    CHECK(r.out.find("order k=2 at lambda=0 vs classical, n<=4: ok") != std::string::npos);
    CHECK(r.out.find("MISMATCH") == std::string::npos);
}

TEST_CASE("meta is additive and otherwise leaves the payload intact") {
    const CliResult plain = run_cli("compute --k 2 --n-max 2");
    const CliResult meta = run_cli("compute --k 2 --n-max 2 --meta");
    REQUIRE(plain.code == 0);
    REQUIRE(meta.code == 0);
    json mj = json::parse(meta.out);
    REQUIRE(mj.contains("meta"));
    CHECK(mj["meta"].contains("generated_at"));
    mj.erase("meta");
    CHECK(degenpoly::dump_json(mj) == plain.out);
}
