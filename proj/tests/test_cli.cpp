#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(ALPHANORM_CLI) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "alphanorm_cli_test";
    fs::create_directories(dir);
    return dir;
}

std::string write(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const char* kShift = R"({"rows":2,"cols":2,"re":[[0,1],[0,0]]})";
const char* kShiftBlocks =
    R"({"row_dims":[1,1],"col_dims":[1,1],"blocks":[[{"rows":1,"cols":1,"re":[[0]]},{"rows":1,"cols":1,"re":[[1]]}],)"
    R"([{"rows":1,"cols":1,"re":[[0]]},{"rows":1,"cols":1,"re":[[0]]}]]})";

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("compute") {
    const std::string m = write("shift.json", kShift);
    Run r = run("compute --input " + m + " --quantity numrad");
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "0.5");

    r = run("compute --input " + m + " --quantity alphanorm --alpha 0.5");
    CHECK(r.code == 0);
    CHECK(std::stod(first_line(r.out)) == doctest::Approx(0.7071068).epsilon(1e-6));
    CHECK(r.out.find("enclosure") != std::string::npos);
    CHECK(r.out.find("\"witness\"") != std::string::npos);

    const std::string d = write("diag.json", R"({"rows":2,"cols":2,"re":[[3,0],[0,4]]})");
    r = run("compute --input " + d + " --quantity opnorm");
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "4");
    CHECK(first_line(run("compute --input " + d + " --quantity specrad").out) == "4");
}

TEST_CASE("compute exit codes") {
    const std::string m = write("shift.json", kShift);
    CHECK(run("compute --input " + m + " --quantity alphanorm --alpha 1.5").code == 3);
    CHECK(run("compute --input " + m + " --quantity alphanorm").code == 3);
    CHECK(run("compute --input " + m + " --quantity trace").code == 3);
    CHECK(run("compute --input " + write("bad.json", "{\"rows\":2}") + " --quantity opnorm").code == 2);
    CHECK(run("compute --input /nonexistent.json --quantity opnorm").code == 2);
    CHECK(run("").code == 3);
}

TEST_CASE("bound") {
    const std::string t = write("shift_blocks.json", kShiftBlocks);
    Run r = run("bound --input " + t + " --theorem est6 --alpha 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("\"theorem\":\"est6\",\"alpha\":1.0") != std::string::npos);
    CHECK(r.out.find("\"value\":0.5,") != std::string::npos);

    const std::string out = (scratch() / "cor_w.json").string();
    r = run("bound --input " + t + " --theorem cor_w --minimize --out " + out);
    CHECK(r.code == 0);
    const std::string saved = slurp(out);
    CHECK(saved.find("\"theorem\":\"cor_w\",\"alpha\":1.0") != std::string::npos);
    CHECK(saved.find("\"value\":0.5") != std::string::npos);

    r = run("bound --input " + t + " --theorem est8 --alpha 1 --p 2");
    CHECK(r.code == 0);
    r = run("bound --input " + t + " --theorem est1 --alpha 0.5");
    CHECK(r.code == 3);
    const std::string diag = write(
        "diag_blocks.json",
        R"({"row_dims":[1,1],"col_dims":[1,1],"blocks":[[{"rows":1,"cols":1,"re":[[2]]},{"rows":1,"cols":1,"re":[[0]]}],)"
        R"([{"rows":1,"cols":1,"re":[[0]]},{"rows":1,"cols":1,"re":[[1]]}]]})");
    r = run("bound --input " + diag + " --theorem est1 --alpha 0.5");
    CHECK(r.code == 0);
    CHECK(r.out.find("est1_iii") != std::string::npos);
    CHECK(run("bound --input " + t + " --theorem cor_opnorm").code == 0);
}

TEST_CASE("bound exit codes") {
    const std::string t = write("shift_blocks.json", kShiftBlocks);
    CHECK(run("bound --input " + t + " --theorem est8 --alpha 1 --p 0.5").code == 3);
    CHECK(run("bound --input " + t + " --theorem est6").code == 3);
    CHECK(run("bound --input " + t + " --theorem est6 --alpha 1 --minimize").code == 3);
    CHECK(run("bound --input " + t + " --theorem est5 --alpha 1").code == 3);
    CHECK(run("bound --input " + t + " --theorem est7 --alpha 1 --s 2").code == 3);
    const std::string rect = write(
        "rect.json",
        R"({"row_dims":[1,2],"col_dims":[2,1],"blocks":[[{"rows":1,"cols":2,"re":[[1,0]]},{"rows":1,"cols":1,"re":[[1]]}],)"
        R"([{"rows":2,"cols":2,"re":[[0,1],[1,0]]},{"rows":2,"cols":1,"re":[[0],[1]]}]]})");
    CHECK(run("bound --input " + rect + " --theorem est8 --alpha 0.5 --p 2 --strict").code == 3);
    CHECK(run("bound --input " + write("junk.json", "[1,2") + " --theorem est6 --alpha 1").code == 2);
}

TEST_CASE("verify") {
    const std::string out = (scratch() / "equal1.json").string();
    Run r = run("verify --suite equal1 --trials 50 --seed 7 --out " + out + " --csv");
    CHECK(r.code == 0);
    const std::string json = slurp(out);
    CHECK(json.find("\"records\"") != std::string::npos);
    CHECK(json.find("\"summary\"") != std::string::npos);
    const std::string csv = slurp((scratch() / "equal1.csv").string());
    CHECK(csv.rfind("check_id,seed,theorem,alpha,p,s,lhs,rhs,slack,verdict\n", 0) == 0);

    const std::string again = (scratch() / "equal1_again.json").string();
    CHECK(run("verify --suite equal1 --trials 50 --seed 7 --out " + again).code == 0);
    CHECK(slurp(again) == json);

    CHECK(run("verify --suite all --trials 0").code == 3);
    CHECK(run("verify --suite bogus").code == 3);
    CHECK(run("verify --suite est6 --trials 1 --out /nonexistent/dir/r.json").code == 2);
    CHECK(run("verify --suite est6 --trials 1 --tol -1").code == 3);
}

TEST_CASE("verify reports failures with exit code 1") {
    const std::string out = (scratch() / "fail.json").string();
    const Run r = run("verify --suite est6 --trials 2 --inject-bound-offset 1 --out " + out);
    CHECK(r.code == 1);
    const std::string json = slurp(out);
    CHECK(json.find("\"verdict\": \"fail\"") != std::string::npos);
    CHECK(json.find("\"input\"") != std::string::npos);
}

TEST_CASE("sweep") {
    const std::string t = write("shift_blocks.json", kShiftBlocks);
    Run r = run("sweep --input " + t + " --theorem est6 --alpha-grid 0:1:0.25");
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "row,theorem,alpha,p,s,value,reference,tightness");
    const double expected[] = {1.0, 0.9013878188659973, 0.7905694150420949, 0.6614378277661477, 0.5};
    for (double e : expected) {
        std::getline(lines, line);
        std::vector<std::string> cells;
        std::stringstream cs(line);
        for (std::string c; std::getline(cs, c, ',');) cells.push_back(c);
        REQUIRE(cells.size() >= 6);
        CHECK(cells[0] == "grid");
        CHECK(std::stod(cells[5]) == doctest::Approx(e).epsilon(1e-12));
    }
    std::getline(lines, line);
    CHECK(line.rfind("argmin,est6,1,", 0) == 0);

    r = run("sweep --input " + t + " --theorem est8 --alpha-grid 1 --p-grid 1,2 --s-grid 0.5");
    CHECK(r.code == 0);
    CHECK(run("sweep --input " + t + " --theorem est6 --alpha-grid 0:1:0.3").code == 3);
    CHECK(run("sweep --input " + t + " --theorem est6 --alpha-grid 0:2:0.5").code == 3);
    CHECK(run("sweep --input " + t + " --theorem est8 --p-grid 0.5,1").code == 3);
    CHECK(run("sweep --input " + t + " --theorem est6 --alpha-grid a:b").code == 3);
}

TEST_CASE("single sweep point reproduces bound") {
    const std::string t = write("shift_blocks.json", kShiftBlocks);
    const Run b = run("bound --input " + t + " --theorem est7 --alpha 0.3 --s 0.25");
    const Run s = run("sweep --input " + t + " --theorem est7 --alpha-grid 0.3 --s-grid 0.25");
    const auto value_of = [](const std::string& json) {
        const auto k = json.find("\"value\":") + 8;
        return json.substr(k, json.find(',', k) - k);
    };
    std::istringstream lines(s.out);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    std::vector<std::string> cells;
    std::stringstream cs(line);
    for (std::string c; std::getline(cs, c, ',');) cells.push_back(c);
    REQUIRE(cells.size() >= 6);
    CHECK(std::stod(cells[5]) == std::stod(value_of(b.out)));
}
