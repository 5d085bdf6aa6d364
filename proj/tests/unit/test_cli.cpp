#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Result {
    std::string out;
    int status = -1;
};

// Runs a shell command line where `minsurf` stands for the binary under test.
Result sh(std::string line) {
    const std::string bin = std::string("'") + MINSURF_CLI + "'";
    for (std::size_t at = line.find("minsurf"); at != std::string::npos;
         at = line.find("minsurf", at + bin.size())) {
        line.replace(at, 7, bin);
    }
    Result r;
    FILE* pipe = popen(line.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::vector<std::vector<double>> csv_rows(const std::string& csv) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<double> row;
        std::istringstream cells(line);
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

} // namespace

TEST_CASE("catalog list and show") {
    const Result list = sh("minsurf catalog list");
    CHECK(list.status == 0);
    const json names = json::parse(list.out);
    CHECK(names.size() == 9);
    CHECK(names[0]["name"] == "helicoid");

    const Result show = sh("minsurf catalog show catenoid");
    CHECK(show.status == 0);
    CHECK(json::parse(show.out)["weierstrass"]["G"] == "z");
}

TEST_CASE("outputs are byte-identical across runs") {
    const std::string line =
        "minsurf catalog show helicoid | minsurf deform --kind theorem51 --c 1+2i | minsurf --res 16x16 ";
    for (const char* tail : {"sample", "verify", "slice --axis 3 --value 0.3 | minsurf fit"}) {
        CAPTURE(tail);
        const Result a = sh(line + tail);
        const Result b = sh(line + tail);
        CHECK(a.status == 0);
        CHECK_FALSE(a.out.empty());
        CHECK(a.out == b.out);
    }
}

TEST_CASE("deformations compose through pipes") {
    const Result twice = sh(
        "minsurf catalog show helicoid | minsurf deform --kind parabolic --c 0.5+0.5i"
        " | minsurf deform --kind parabolic --c 0.5+0.5i | minsurf --res 12x12 sample");
    const Result once = sh(
        "minsurf catalog show helicoid | minsurf deform --kind parabolic --c 1+1i | minsurf --res 12x12 sample");
    REQUIRE(twice.status == 0);
    REQUIRE(once.status == 0);
    const auto a = csv_rows(twice.out);
    const auto b = csv_rows(once.out);
    REQUIRE(a.size() == 144);
    REQUIRE(a.size() == b.size());
    double worst = 0.0;
    for (std::size_t r = 0; r < a.size(); ++r) {
        REQUIRE(a[r].size() == b[r].size());
        for (std::size_t i = 0; i < a[r].size(); ++i) worst = std::max(worst, std::abs(a[r][i] - b[r][i]));
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("errors are JSON on stdout with a nonzero status") {
    const Result unknown = sh("minsurf catalog show enneper");
    CHECK(unknown.status == 1);
    const json e = json::parse(unknown.out);
    CHECK(e["error"]["kind"] == "InvalidArgument");
    CHECK_FALSE(e["error"]["message"].get<std::string>().empty());

    const Result passed = sh("minsurf catalog show enneper | minsurf deform --kind associate --theta 1 | minsurf verify");
    CHECK(passed.status == 1);
    CHECK(json::parse(passed.out) == e);

    const Result bad_option = sh("minsurf sample --frobnicate 2>/dev/null");
    CHECK(bad_option.status == 2);
    CHECK(json::parse(bad_option.out)["error"]["kind"] == "InvalidArgument");

    const Result bad_spec = sh("echo '{\"curve\": [\"1\", \"z +\"]}' | minsurf verify");
    CHECK(bad_spec.status == 1);
    CHECK(json::parse(bad_spec.out)["error"]["kind"] == "ParseError");

    const Result planar = sh("minsurf catalog show helicoid | minsurf slice --axis 0 --value 0.1");
    CHECK(planar.status == 1);
    CHECK(json::parse(planar.out)["error"]["kind"] == "AxisNotMonotone");
}

TEST_CASE("mesh export") {
    const Result obj = sh("minsurf catalog show helicoid | minsurf --res 4x4 export --format obj");
    CHECK(obj.status == 0);
    CHECK(obj.out.rfind("v ", 0) == 0);
    const Result projected =
        sh("minsurf catalog show lagrangian-catenoid | minsurf --res 4x4 export --format obj --project 0,2,3");
    CHECK(projected.status == 0);
    const Result wrong = sh("minsurf catalog show helicoid | minsurf export --format obj --project 0,1,3");
    CHECK(wrong.status == 1);
}

TEST_CASE("job files") {
    const auto dir = std::filesystem::temp_directory_path() / "cli_job_test";
    std::filesystem::create_directories(dir);
    const std::string spec = (dir / "spec.json").string();
    const std::string job = (dir / "job.json").string();
    const std::string verify = (dir / "verify.json").string();
    REQUIRE(sh("minsurf --output '" + spec + "' catalog show catenoid").status == 0);
    {
        std::FILE* f = std::fopen(job.c_str(), "w");
        REQUIRE(f != nullptr);
        const json j = {{"input", spec},
                        {"deformations", {{{"kind", "theorem51"}, {"c", "2"}}}},
                        {"res", "16x16"},
                        {"outputs", {{"verify", verify}}}};
        std::fputs(j.dump().c_str(), f);
        std::fclose(f);
    }
    const Result r = sh("minsurf --res 20x20 run '" + job + "'");
    CHECK(r.status == 0);
    CHECK(json::parse(r.out)["artifacts"].size() == 1);
    const Result v = sh("cat '" + verify + "'");
    const json report = json::parse(v.out);
    CHECK(report["dimension"] == 4);
    // command-line options take precedence over the job file
    CHECK(report["minimality"]["resolution"] == "20x20");
    std::filesystem::remove_all(dir);
}
