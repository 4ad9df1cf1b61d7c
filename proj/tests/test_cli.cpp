#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "sphaera/cli.hpp"
#include "sphaera/floating.hpp"
#include "sphaera/region_io.hpp"
#include "support.hpp"

using namespace sphaera;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("sphaera_test_" + name)).string();
}

std::string write_file(const std::string& name, const std::string& text) {
    const std::string path = temp_path(name);
    std::ofstream(path) << text;
    return path;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Outcome {
    int code;
    std::string out, err;
};

Outcome invoke(const RunConfig& cfg) {
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

} // namespace

TEST_CASE("command names") {
    CHECK(parse_command("symmetrize") == Command::symmetrize);
    CHECK(parse_command("suite") == Command::suite);
    CHECK(parse_command("highdim") == Command::highdim);
    CHECK_FALSE(parse_command("symmetrise").has_value());
}

TEST_CASE("configuration validation") {
    RunConfig c;
    CHECK_NOTHROW(validate(c));
    c.levels = 0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c = RunConfig{};
    c.eps = 0.0;
    CHECK_THROWS_AS(validate(c), std::invalid_argument);
    c.command = Command::highdim;
    CHECK(invoke(c).code == 1);
}

TEST_CASE("symmetrize on a symmetric input reports zero deltas") {
    RunConfig c;
    c.command = Command::symmetrize;
    c.input = write_file("cap.json", region_to_json(polygonize_cap({unit(Vec3(0.2, 0.3, 1)), 0.6}, 96)));
    const Outcome o = invoke(c);
    CHECK(o.code == 0);
    const auto rows = lines(o.out);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0] == "quantity,before,after,delta");
    for (int i = 1; i <= 3; ++i) {
        const double delta = std::stod(rows[i].substr(rows[i].rfind(',') + 1));
        CHECK(std::abs(delta) <= 1e-4);
    }
}

TEST_CASE("malformed input exits with status 1") {
    RunConfig c;
    c.command = Command::sas;
    c.input = write_file("bad.json", R"({"vertices": [[1,0,0],)");
    const Outcome o = invoke(c);
    CHECK(o.code == 1);
    CHECK(o.err.find("parse error") != std::string::npos);
    c.input.clear();
    CHECK(invoke(c).code == 1);
}

TEST_CASE("highdim with the example parameters") {
    RunConfig c;
    c.command = Command::highdim;
    c.samples = 50;
    c.output = temp_path("highdim.csv");
    const Outcome o = invoke(c);
    CHECK(o.code == 0);
    const auto rows = lines(read_file(c.output));
    REQUIRE(rows.size() == 1 + 11 * 11);
    CHECK(rows[0] == "u,v,z_minus,z_plus,z_s,F");
    CHECK(rows[1 + 5 * 11 + 5].rfind("1,0,", 0) == 0);
    CHECK(o.err.find("printed_polynomial=-139") != std::string::npos);
}

TEST_CASE("outputs are byte-stable for equal config and seed") {
    std::mt19937_64 g(3);
    const Vec3 ctr = support::random_unit(g);
    RunConfig c;
    c.command = Command::sas;
    c.n_max = 5;
    c.seed = 42;
    c.input = write_file("sym.json", region_to_json(support::random_c_symmetric_polygon(g, ctr)));
    const Outcome a = invoke(c), b = invoke(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(lines(a.out).size() == 4);
    CHECK(lines(a.out)[0] == "N,r_equal_area,A_N,C(r,N),gap");
}

TEST_CASE("a property violation exits with status 2 and a JSON report") {
    std::mt19937_64 g(4);
    RunConfig c;
    c.command = Command::converge;
    c.iterations = 1;
    c.eps = 1e-6;
    c.input = write_file("conv.json", region_to_json(support::random_convex_polygon(g, Vec3::UnitZ(), 0.6, 9)));
    const Outcome o = invoke(c);
    CHECK(o.code == 2);
    const auto report = nlohmann::json::parse(o.err.substr(o.err.find('{')));
    CHECK(report["command"] == "converge");
    CHECK(report["violations"][0]["check"] == "steiner.converge_to_cap");
}

TEST_CASE("winternitz and floating commands") {
    RunConfig c;
    c.command = Command::winternitz;
    c.input = write_file("wcap.json", region_to_json(CapSpec{unit(Vec3(1, 0, 1)), 0.5}));
    const Outcome w = invoke(c);
    CHECK(w.code == 0);
    CHECK(lines(w.out).size() == 65);

    const SmoothBoundary e = gnomonic_ellipse(Vec3::UnitZ(), 0.5, 0.3, 0.0, 256);
    std::ostringstream s;
    s << std::setprecision(17) << R"({"boundary_samples": [)";
    for (std::size_t i = 0; i < e.samples().size(); ++i) {
        const Vec3& x = e.samples()[i];
        s << (i ? "," : "") << '[' << x.x() << ',' << x.y() << ',' << x.z() << ']';
    }
    s << "]}";
    c.command = Command::floating;
    c.restarts = 2;
    c.input = write_file("ellipse.json", s.str());
    const Outcome f = invoke(c);
    CHECK(f.code == 0);
    CHECK(lines(f.out).size() == 5);
    CHECK(f.err.find("Omega=") != std::string::npos);
}
