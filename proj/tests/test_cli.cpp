#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Result {
    int code;
    std::string output;
};

Result run(const std::string& args) {
    const auto log = std::filesystem::temp_directory_path() / "corrnoise_cli_test.log";
    const std::string cmd = std::string(CORRNOISE_CLI) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

const std::string kConfigs = CORRNOISE_CONFIGS;
const std::string kData = CORRNOISE_TEST_DATA;

} // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run("").code == 2);
    CHECK(run("teleport").code == 2);
    CHECK(run("figure fig9").code == 2);
    CHECK(run("figure fig2 --grid -3").code == 2);
    CHECK(run("verify --suite everything").code == 2);
    CHECK(run("rates " + kConfigs + "/quantum_1f_bell.yaml --at 1parsec").code == 2);
    CHECK(run("simulate /nonexistent.yaml").code == 2);
}

TEST_CASE("invalid initial state lists valid names") {
    const auto r = run("simulate " + kData + "/bad_state.yaml");
    CHECK(r.code == 2);
    CHECK(r.output.find("line") != std::string::npos);
    for (const char* name : {"up_down", "bell_psi_plus", "bell_phi_plus", "bell_i", "plus_plus"}) {
        CHECK(r.output.find(name) != std::string::npos);
    }
}

TEST_CASE("simulate writes a stamped trajectory") {
    const auto path = std::filesystem::temp_directory_path() / "corrnoise_cli_exchange.csv";
    const auto r = run("simulate " + kConfigs + "/exchange_markovian.yaml --out " + path.string());
    CHECK(r.code == 0);
    std::ifstream in(path);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    CHECK(text.find("# markovian.gamma_12: 0.9 1/us") != std::string::npos);
    CHECK(text.find("t_us,") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("rates prints one row per time") {
    const auto r = run("rates " + kConfigs + "/quantum_1f_bell.yaml --at 1ns,2ns,5ns");
    CHECK(r.code == 0);
    int rows = 0;
    std::istringstream lines(r.output);
    for (std::string l; std::getline(lines, l);) rows += (!l.empty() && l[0] != '#' && l[0] != 't');
    CHECK(rows == 3);
}

TEST_CASE("verify reports success") {
    const auto r = run("verify --suite oracles --seed 5");
    CHECK(r.code == 0);
}
