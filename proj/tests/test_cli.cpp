// End-to-end checks of the command-line tool: exit codes, CSV shapes,
// reproducibility of sampled output and the PPM contract.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    static int serial = 0;
    std::string out_path = "cli_stdout_" + std::to_string(serial++) + ".txt";
    std::string cmd = std::string(CLI_BIN) + " " + args + " > " + out_path + " 2> cli_stderr.txt";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = rc == -1 ? -1 : WEXITSTATUS(rc);
    r.out = slurp(out_path);
    std::remove(out_path.c_str());
    return r;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> ls;
    std::stringstream ss(s);
    std::string l;
    while (std::getline(ss, l)) ls.push_back(l);
    return ls;
}

// value columns of a named CSV row: "name,re,im"
bool csv_value(const std::string& text, const std::string& name, double& re, double& im) {
    for (const auto& l : lines_of(text)) {
        if (l.rfind(name + ",", 0) != 0) continue;
        return std::sscanf(l.c_str() + name.size() + 1, "%lf,%lf", &re, &im) == 2;
    }
    return false;
}

const char* kQuad = "'{\"kind\":\"quad\"}'";

}  // namespace

TEST_CASE("residue subcommand") {
    RunResult r = run(std::string("residue ") + kQuad);
    REQUIRE(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(!ls.empty());
    CHECK(ls[0] == "quantity,re,im");
    double re = 0, im = 0;
    REQUIRE(csv_value(r.out, "gamma", re, im));
    CHECK(std::abs(re - 1.0) < 1e-8);
    CHECK(std::abs(im) < 1e-10);
    REQUIRE(csv_value(r.out, "residue_check", re, im));
    CHECK(re < 1e-8);
}

TEST_CASE("taylor subcommand") {
    RunResult r = run("taylor '{\"kind\":\"expm1\"}' --order 3");
    REQUIRE(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == "k,re,im");
    double re = 0, im = 0;
    REQUIRE(csv_value(r.out, "2", re, im));
    CHECK(std::abs(re - 0.5) < 1e-9);
    REQUIRE(csv_value(r.out, "3", re, im));
    CHECK(std::abs(re - 1.0 / 6.0) < 1e-9);

    // precondition violations are configuration errors
    CHECK(run("taylor '{\"kind\":\"quad\"}' --radius 100").exit_code == 2);
}

TEST_CASE("fatou-sample is reproducible and honors an input point list") {
    std::string args = std::string("fatou-sample ") + kQuad + " --count 5 --tol 1e-8";
    RunResult a = run(args);
    RunResult b = run(args);
    REQUIRE(a.exit_code == 0);
    CHECK(a.out == b.out);
    auto ls = lines_of(a.out);
    REQUIRE(ls.size() == 6);
    CHECK(ls[0] == "re,im,phi_re,phi_im,err,iters,status");
    for (size_t i = 1; i < ls.size(); ++i)
        CHECK(ls[i].find(",ok") != std::string::npos);

    {
        std::ofstream pts("cli_points.csv");
        pts << "re,im\n-0.1,0\n-0.25,0.05\n";
    }
    RunResult p = run(std::string("fatou-sample ") + kQuad + " --points cli_points.csv --tol 1e-8");
    REQUIRE(p.exit_code == 0);
    auto pl = lines_of(p.out);
    REQUIRE(pl.size() == 3);
    double re = 0, im = 0, phi_re = 0, phi_im = 0;
    REQUIRE(std::sscanf(pl[1].c_str(), "%lf,%lf,%lf,%lf", &re, &im, &phi_re, &phi_im) == 4);
    CHECK(re == -0.1);
    CHECK(std::abs(phi_re - 7.751164097009959) < 1e-6);
    CHECK(std::abs(phi_im) < 1e-6);
    std::remove("cli_points.csv");

    CHECK(run(std::string("fatou-sample ") + kQuad + " --points no_such_file.csv").exit_code == 2);
}

TEST_CASE("horn-sample stays on the validated cylinder heights") {
    RunResult r = run(std::string("horn-sample ") + kQuad +
                      " --count 4 --height-min 3 --height-max 4 --tol 1e-9");
    REQUIRE(r.exit_code == 0);
    auto ls = lines_of(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == "re,im,h_re,h_im,err,iters,status");
    for (size_t i = 1; i < ls.size(); ++i) {
        INFO(ls[i]);
        CHECK(ls[i].find(",ok") != std::string::npos);
    }
}

TEST_CASE("renorm-critical reports a unit-modulus gap") {
    RunResult r = run("renorm-critical '{\"kind\":\"c_d\",\"d\":2}' --tol 1e-9");
    REQUIRE(r.exit_code == 0);
    double re = 0, im = 0;
    REQUIRE(csv_value(r.out, "modulus_gap", re, im));
    CHECK(re < 1e-6);
    REQUIRE(csv_value(r.out, "v_prime", re, im));
    CHECK(std::abs(re - 1.8615711875368399) < 1e-6);

    CHECK(run("renorm-critical '{\"kind\":\"quad\"}' --norm sideways").exit_code == 2);
}

TEST_CASE("lavaurs-sample requires a phase") {
    CHECK(run(std::string("lavaurs-sample ") + kQuad).exit_code == 2);

    std::string args = std::string("lavaurs-sample ") + kQuad +
                       " --sigma 0,6 --count 4 --tol 1e-8 --budget 600000";
    RunResult a = run(args);
    REQUIRE(a.exit_code == 0);
    auto ls = lines_of(a.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == "re,im,g_re,g_im,err,iters,status");
    int ok_rows = 0;
    for (size_t i = 1; i < ls.size(); ++i)
        if (ls[i].find(",ok") != std::string::npos) ++ok_rows;
    CHECK(ok_rows >= 1);
    RunResult b = run(args);
    CHECK(a.out == b.out);
}

TEST_CASE("chessboard renders an identical PPM for any worker count") {
    std::string base = std::string("chessboard ") + kQuad +
                       " --center -0.5,0 --width 2 --size 48x32";
    CHECK(run(base + " --width 0 --out cli_bad.ppm").exit_code == 2);
    CHECK(run(base).exit_code == 2);  // --out is required

    REQUIRE(run(base + " --out cli_a.ppm --threads 1").exit_code == 0);
    REQUIRE(run(base + " --out cli_b.ppm --threads 8").exit_code == 0);
    std::string a = slurp("cli_a.ppm");
    std::string b = slurp("cli_b.ppm");
    REQUIRE(a.size() == std::string("P6\n48 32\n255\n").size() + 3u * 48 * 32);
    CHECK(a.compare(0, 13, "P6\n48 32\n255\n") == 0);
    CHECK(a == b);
    std::remove("cli_a.ppm");
    std::remove("cli_b.ppm");
}

TEST_CASE("verify subcommand") {
    RunResult c = run("verify --suite constants");
    REQUIRE(c.exit_code == 0);
    CHECK(c.out.find("d,gamma_re,gamma_im,closed_form") != std::string::npos);
    CHECK(c.out.find("\n2,") != std::string::npos);
    CHECK(c.out.find("\n3,") != std::string::npos);
    CHECK(c.out.find("\n5,") != std::string::npos);
    CHECK(c.out.find("PASS") != std::string::npos);
    CHECK(c.out.find("FAIL") == std::string::npos);

    RunResult h = run("verify --suite 10");
    REQUIRE(h.exit_code == 0);
    CHECK(h.out.find("PASS") != std::string::npos);

    CHECK(run("verify --suite nonsense").exit_code == 2);
}

TEST_CASE("exit codes separate parse errors from numeric failures") {
    CHECK(run("").exit_code == 2);                                // a subcommand is required
    CHECK(run(std::string("residue ") + kQuad + " --nope").exit_code == 2);
    CHECK(run("residue '{\"kind\":\"dodecahedron\"}'").exit_code == 2);
    // a degenerate germ is a numeric failure, not a usage problem
    CHECK(run("residue '{\"kind\":\"blaschke\",\"d\":2}'").exit_code == 1);
}
