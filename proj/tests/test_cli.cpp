#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "multiplet/cli.hpp"
#include "multiplet/serialize.hpp"
#include "oracle.hpp"

using namespace multiplet;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch() {
    auto p = std::filesystem::temp_directory_path() / "multiplet_cli_test";
    std::filesystem::create_directories(p);
    return p;
}

// Set MULTIPLET_UPDATE_GOLDEN=1 to rewrite the reference outputs.
void check_golden(const std::string& name, const std::string& got) {
    const std::string path = MULTIPLET_SOURCE_DIR "/tests/golden/" + name;
    if (std::getenv("MULTIPLET_UPDATE_GOLDEN")) {
        std::ofstream(path, std::ios::binary) << got;
        return;
    }
    REQUIRE(std::filesystem::exists(path));
    CHECK(oracle::read_file(path) == got);
}

}  // namespace

TEST_CASE("table subcommands are byte-stable") {
    for (const char* t : {"real", "shifted", "complex"}) {
        const Run r = cli({"xor", "--table", t});
        CHECK(r.code == 0);
        check_golden(std::string("xor_") + t + ".csv", r.out);
    }
    const Run all = cli({"xor"});
    CHECK(all.code == 0);
    check_golden("xor_all.csv", all.out);
    for (const char* t : {"xnor", "interval", "css"}) {
        const Run r = cli({t});
        CHECK(r.code == 0);
        check_golden(std::string(t) + ".csv", r.out);
        CHECK(cli({t}).out == r.out);
    }
}

TEST_CASE("complex XOR table contains the four binary rows") {
    const Run r = cli({"xor", "--table", "complex"});
    CHECK(r.out.find("0.0000,0.0000,0.0000,") != std::string::npos);
    CHECK(r.out.find("0.0000,1.0000,1.0000,") != std::string::npos);
    CHECK(r.out.find("1.0000,0.0000,1.0000,") != std::string::npos);
    CHECK(r.out.find("1.0000,1.0000,0.0000,") != std::string::npos);
}

TEST_CASE("resolved configuration goes to stderr") {
    const Run r = cli({"xnor", "--p-or", "6"});
    CHECK(r.err.find("# config [xnor]") != std::string::npos);
    CHECK(r.err.find("p-or=6") != std::string::npos);
    CHECK(r.err.find("p-and=-3") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(cli({"xor", "--bogus"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"nosuch"}).code == 2);
    CHECK(cli({"xor", "--table", "sideways"}).code == 2);
    CHECK(cli({"build", "--what", "series", "--name", "sinh"}).code == 2);
    CHECK(cli({"--help"}).code == 0);
    CHECK(cli({"gradcheck", "--trials", "10", "--seed", "1"}).code == 0);
    CHECK(cli({"gradcheck", "--trials", "10", "--net-trials", "0", "--tol", "0"}).code == 1);
    CHECK(cli({"eval", "--model", "/nonexistent/model.json", "--input", "1"}).code == 2);
}

TEST_CASE("build then eval") {
    const auto dir = scratch();
    const std::string model = (dir / "tree.json").string();
    REQUIRE(cli({"build", "--what", "prodtree", "--n", "4", "--out", model}).code == 0);
    const Run r = cli({"eval", "--model", model, "--input", "0.9,0.8,0.7,0.6"});
    CHECK(r.code == 0);
    CHECK(r.out == "0.3024\n");

    const Run div = cli({"build", "--what", "division"});
    CHECK(div.code == 0);
    CHECK(nlohmann::json::parse(div.out).get<NetworkGraph>().layers.size() == 2);

    const std::string sp = (dir / "softplus.json").string();
    REQUIRE(cli({"build", "--what", "softplus", "--variant", "laurent", "--out", sp}).code == 0);
    const Run s = cli({"eval", "--model", sp, "--input", "0"});
    CHECK(s.out == "0.5\n");

    const std::string xo = (dir / "xor.json").string();
    std::ofstream(xo) << R"({"input_arity":2,"layers":[[{"inputs":[0,1],"multiplet":{"L":1,"w":[1,1],
        "neurons":[{"m":1,"b":0,"p":7,"q":1},{"m":-1,"b":1,"p":-3,"q":1}]}}],
        [{"inputs":[0,1],"multiplet":{"L":1,"w":[1,1],"neurons":[{"m":1,"b":0,"p":-3,"q":1}]}}]]})";
    const Run lifted = cli({"eval", "--model", xo, "--input", "0,1", "--lift", "1e-6", "--precision", "4"});
    CHECK(lifted.code == 0);
    CHECK(lifted.out.rfind("1", 0) == 0);
}

TEST_CASE("surface export") {
    const auto dir = scratch();
    const std::string path = (dir / "pq.csv").string();
    REQUIRE(cli({"surface", "--kind", "pq", "--res", "5", "--out", path}).code == 0);
    const std::string csv = oracle::read_file(path);
    CHECK(csv.rfind("p,q,value,degenerate\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);

    const std::string x3 = (dir / "x3.csv").string();
    REQUIRE(cli({"surface", "--kind", "xor", "--res", "3", "--x3", "0.5", "--w3", "1", "--out", x3}).code == 0);
    CHECK(oracle::read_file(x3).rfind("x1,x2,x3,w3,delta\n", 0) == 0);
    CHECK(cli({"surface", "--kind", "blob", "--out", x3}).code == 2);
    CHECK(cli({"surface", "--kind", "pq"}).code == 2);
}

TEST_CASE("train writes history and model") {
    const auto dir = scratch();
    const std::string hist = (dir / "h.csv").string(), model = (dir / "m.json").string();
    const Run r = cli({"train", "--task", "xor", "--epochs", "30", "--history", hist, "--model-out", model});
    CHECK(r.code == 0);
    const std::string h = oracle::read_file(hist);
    CHECK(h.rfind("epoch,loss,mean_nu\n", 0) == 0);
    CHECK(std::count(h.begin(), h.end(), '\n') == 31);
    CHECK(std::filesystem::exists(model));
}

TEST_CASE("config file values act as flags") {
    const auto dir = scratch();
    const std::string cfg = (dir / "xnor.toml").string();
    std::ofstream(cfg) << "[xnor]\np-or = 6\n";
    const Run a = cli({"--config", cfg, "xnor"});
    const Run b = cli({"xnor", "--p-or", "6"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("classification subcommands on a small subsample") {
    const std::string d = MULTIPLET_SOURCE_DIR "/data/";
    const std::vector<std::string> data = {
        "--train", d + "mnist5k-train-images-idx3-ubyte", "--labels", d + "mnist5k-train-labels-idx1-ubyte",
        "--test", d + "mnist5k-test-images-idx3-ubyte", "--test-labels", d + "mnist5k-test-labels-idx1-ubyte",
        "--subsample", "100", "--test-subsample", "20"};
    auto with = [&](std::string cmd, std::vector<std::string> extra) {
        std::vector<std::string> a = {cmd};
        a.insert(a.end(), data.begin(), data.end());
        a.insert(a.end(), extra.begin(), extra.end());
        return cli(a);
    };
    const Run k = with("knn", {"--p", "1", "--L", "1"});
    CHECK(k.code == 0);
    const auto j = nlohmann::json::parse(k.out);
    CHECK(j["n_test"] == 20);
    CHECK(j["config"]["p"] == 1.0);
    const Run io = with("inout", {"--threshold", "0"});
    CHECK(io.code == 0);
    CHECK(nlohmann::json::parse(io.out)["coverage"] == 1.0);
}

TEST_CASE("the installed binary honours exit codes") {
    const std::string bin = MULTIPLET_CLI_PATH;
    auto status = [&](const std::string& args) {
        const int s = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(s);
    };
    CHECK(status("xor --table complex") == 0);
    CHECK(status("xor --nope") == 2);
    CHECK(status("--threads 2 gradcheck --trials 10 --seed 1") == 0);
}
