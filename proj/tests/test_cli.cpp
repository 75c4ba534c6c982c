#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#ifndef EQH_CLI_PATH
#define EQH_CLI_PATH "eqh"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + EQH_CLI_PATH + " " + args + " 2>&1";
    std::array<char, 4096> buffer{};
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
        result.output.append(buffer.data(), n);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

} // namespace

TEST_CASE("verify exits zero on the published data") {
    const RunResult r = run("verify --space 'projective_space(2)' --rmax 5");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("all checks passed") != std::string::npos);
}

TEST_CASE("solve emits the coefficients in a stable schema") {
    const RunResult r =
        run("solve --space 'taut_line_bundle(2)' --rmax 4 --format json");
    REQUIRE(r.exit_code == 0);
    const auto payload = nlohmann::json::parse(r.output);
    CHECK(payload.at("schema") == 1);
    CHECK(payload.at("command") == "solve");
    bool saw_c2 = false, saw_d3 = false;
    for (const auto& c : payload.at("results").at("coefficients")) {
        if (c.at("name") == "c" && c.at("level") == 2) {
            CHECK(c.at("value") == "2");
            saw_c2 = true;
        }
        if (c.at("name") == "d" && c.at("level") == 3) {
            CHECK(c.at("value") == "-4");
            saw_d3 = true;
        }
    }
    CHECK(saw_c2);
    CHECK(saw_d3);

    // Text and JSON report identical numerics.
    const RunResult t = run("solve --space 'taut_line_bundle(2)' --rmax 4");
    CHECK(t.exit_code == 0);
    for (const auto& c : payload.at("results").at("coefficients")) {
        const std::string line = std::string(c.at("name")) + "@" +
                                 std::to_string(int(c.at("level"))) + " = " +
                                 std::string(c.at("value"));
        CHECK(t.output.find(line) != std::string::npos);
    }
}

TEST_CASE("csv output carries a header row") {
    const RunResult r =
        run("product --space 'projective_space(2)' --r 1 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("i,j,product\n", 0) == 0);
}

TEST_CASE("esh matches the truncated closed form") {
    const RunResult r =
        run("esh --space 'taut_line_bundle(1)' --pmax 3 --truncate-u 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("x_g0^2 = (6*q*u + q^2)*g0 - q*u*g1") != std::string::npos);
    CHECK(r.output.find("chain p=2 strict") != std::string::npos);
}

TEST_CASE("exit codes honor the contract") {
    CHECK(run("product --space 'spheres(9)'").exit_code == 2);   // usage
    CHECK(run("bogus-subcommand").exit_code == 2);               // usage
    CHECK(run("spaces", "EQH_FAULT_INJECT=1").exit_code == 3);   // internal

    // A contradictory seed file makes the solver fail with exit 1.
    const std::string path = "/tmp/eqh_contradictory.eqh";
    {
        std::ofstream out(path);
        out << R"([space]
id = broken
q_degree = 6
coeffs = integer
basis = e0:0 e1:2 e2:4

[product]
unit = e0
generator = e1
e1 -> e2 + ?alpha*u*e1
e2 -> q*e0 + ?gamma*u*e2

[seidel]
shift = 4
e0 -> e2 + ?A*u*e1 + ?B*u^2*e0
e1 -> q*e0
e2 -> q*e1 + ?F*q*u*e0

[seeds]
B = (r+1)^2
alpha@0 = 0
gamma@0 = 5
)";
    }
    const RunResult r = run("solve --spec " + path + " --rmax 1");
    CHECK(r.exit_code == 1);
}

TEST_CASE("zhao reports the direct limit") {
    const RunResult r = run("zhao --s 3 --K 9 --format json");
    REQUIRE(r.exit_code == 0);
    const auto payload = nlohmann::json::parse(r.output);
    CHECK(payload.at("results").at("d_squared_zero") == true);
    CHECK(payload.at("results").at("limit") == "Q[u,u^-1]");
}
