#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "fea/experiment.hpp"
#include "fea/trace_io.hpp"

using namespace fea;

namespace {

std::string temp_dir() {
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "fea_io_test";
    std::filesystem::create_directories(dir);
    return dir.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out);
    out << text;
}

Trace sample_trace(int steps, bool with_exact) {
    WorldConfig world;
    AgentConfig agent;
    agent.optimiser = OptimiserConfig{1.0, 20, false};
    agent.intention = intention_from_target(world.n, 4, 1.0);
    agent.policy = Policy::RandomAction;
    Trace trace = simulate(world, agent, 2, steps, 99);
    if (with_exact) attach_exact(trace);
    return trace;
}

} // namespace

TEST_CASE("trace csv round-trips bit-exactly") {
    const std::string path = temp_dir() + "/roundtrip.csv";
    for (bool with_exact : {false, true}) {
        const Trace trace = sample_trace(25, with_exact);
        write_trace_csv(trace, path);
        validate_trace_csv(path);
        const std::vector<StepRecord> back = read_trace_csv(path);
        REQUIRE(back.size() == trace.records.size());
        for (std::size_t i = 0; i < back.size(); ++i) {
            const StepRecord& a = trace.records[i];
            const StepRecord& b = back[i];
            CHECK(a.t == b.t);
            CHECK(a.psi_true == b.psi_true);
            CHECK(a.s == b.s);
            CHECK(a.a == b.a);
            CHECK(a.free_energy_chosen == b.free_energy_chosen);
            CHECK(a.belief == b.belief);
            CHECK(a.exact == b.exact);
        }
    }
}

TEST_CASE("trace csv has fixed column shape") {
    const std::string path = temp_dir() + "/shape.csv";
    write_trace_csv(sample_trace(3, false), path);
    const std::string text = slurp(path);
    std::size_t commas = 0, lines = 0;
    std::size_t first_line_commas = 0;
    for (char c : text) {
        if (c == ',') ++commas;
        if (c == '\n') {
            if (++lines == 1) first_line_commas = commas;
        }
    }
    CHECK(lines == 3);
    // 5 + 2*16 = 37 fields, so 36 commas per row
    CHECK(first_line_commas == 36);
    CHECK(commas == 3 * 36);
}

TEST_CASE("trace validator catches malformed files") {
    const std::string dir = temp_dir();
    const std::string path = dir + "/bad.csv";

    spit(path, "0,1,0,1,0.5,0.5,0.5,,\n");
    CHECK_NOTHROW(validate_trace_csv(path)); // minimal n=2 file is fine

    spit(path, "");
    CHECK_THROWS_AS(validate_trace_csv(path), io_error);

    spit(path, "0,1,0,1,0.5,0.5,0.5\n"); // wrong field count
    CHECK_THROWS_AS(validate_trace_csv(path), io_error);

    spit(path, "1,1,0,1,0.5,0.5,0.5,,\n"); // does not start at t=0
    CHECK_THROWS_AS(validate_trace_csv(path), io_error);

    spit(path, "0,1,0,1,0.5,0.5,0.5,,\n0,1,0,1,0.5,0.5,0.5,,\n"); // repeated t
    CHECK_THROWS_AS(validate_trace_csv(path), io_error);

    spit(path, "0,1,0,1,0.5,0.9,0.5,,\n"); // belief does not sum to 1
    CHECK_THROWS_AS(validate_trace_csv(path), io_error);

    spit(path, "0,1,0,1,0.5,0.5,0.5,0.5,\n"); // half-filled exact columns
    CHECK_THROWS_AS(validate_trace_csv(path), io_error);

    spit(path, "0,1,0,1,abc,0.5,0.5,,\n"); // unparseable number
    CHECK_THROWS_AS(validate_trace_csv(path), io_error);

    CHECK_THROWS_AS(validate_trace_csv(dir + "/does_not_exist.csv"), io_error);
    CHECK_THROWS_AS(read_trace_csv(dir + "/does_not_exist.csv"), io_error);
}

TEST_CASE("profile csv layout and validation") {
    const std::string path = temp_dir() + "/profile.csv";
    LocationProfile p20;
    p20.iterations = 20;
    p20.mean = {0.5, 0.25, 0.125, 0.125};
    p20.stddev = {0.01, 0.02, 0.0, 0.03};
    LocationProfile p100 = p20;
    p100.iterations = 100;
    write_profile_csv({p20, p100}, path);
    validate_profile_csv(path);

    const std::string text = slurp(path);
    CHECK(text.rfind("cell,mean_20,std_20,mean_100,std_100\n", 0) == 0);
    CHECK(text.find("\n0,0.5,0.01") != std::string::npos);

    spit(path, "cell,mean_20,std_20\n0,0.5,-0.1\n1,0.5,0.0\n");
    CHECK_THROWS_AS(validate_profile_csv(path), io_error); // negative std
    spit(path, "cell,mean_20,std_20\n0,0.6,0.1\n1,0.6,0.0\n");
    CHECK_THROWS_AS(validate_profile_csv(path), io_error); // means exceed 1
    spit(path, "mean_20,std_20\n");
    CHECK_THROWS_AS(validate_profile_csv(path), io_error); // bad header
    CHECK_THROWS_AS(write_profile_csv({}, path), std::invalid_argument);
}

TEST_CASE("comparison csv layout and validation") {
    const std::string path = temp_dir() + "/kl.csv";
    ComparisonTable table;
    table.sweep = {25, 50, 200};
    table.kl = {{0.5, 0.375}, {0.25, 0.1875}, {0.125, 0.0625}};
    table.entropy = {{2.0, 1.75}, {1.5, 1.25}, {1.0, 0.875}};
    table.entropy_exact = {0.75, 0.625};
    write_kl_csv(table, path);
    validate_kl_csv(path);

    const std::string text = slurp(path);
    CHECK(text.rfind("t,kl_25,kl_50,kl_200,entropy_25,entropy_50,entropy_200,entropy_exact\n", 0) ==
          0);
    CHECK(text.find("\n0,0.5,0.25,0.125,2,1.5,1,0.75\n") != std::string::npos);
    CHECK(text.find("\n1,0.375,0.1875,0.0625,1.75,1.25,0.875,0.625\n") != std::string::npos);

    spit(path, "t,kl_25,entropy_25\n0,0.1,1.0\n"); // missing entropy_exact column
    CHECK_THROWS_AS(validate_kl_csv(path), io_error);
    spit(path, "t,kl_25,entropy_25,entropy_exact\n0,0.1,nan,1.0\n");
    CHECK_THROWS_AS(validate_kl_csv(path), io_error);
    ComparisonTable ragged = table;
    ragged.entropy_exact.pop_back();
    CHECK_THROWS_AS(write_kl_csv(ragged, path), std::invalid_argument);
}

TEST_CASE("heatmap bytes are the documented absolute mapping") {
    const std::string path = temp_dir() + "/map.pgm";
    std::vector<Belief> rows = {Belief(16, 1.0 / 16), Belief(16, 0.0)};
    rows[1][3] = 1.0;
    render_heatmap(rows, path);
    const std::string bytes = slurp(path);
    const std::string header = "P5 16 2 255\n";
    REQUIRE(bytes.size() == header.size() + 32);
    CHECK(bytes.rfind(header, 0) == 0);
    for (int j = 0; j < 16; ++j)
        CHECK(static_cast<unsigned char>(bytes[header.size() + j]) == 225); // 240*(1-1/16)
    for (int j = 0; j < 16; ++j) {
        const unsigned char px = static_cast<unsigned char>(bytes[header.size() + 16 + j]);
        CHECK(px == (j == 3 ? 0 : 240));
    }
}

TEST_CASE("heatmap clamps out-of-range values") {
    const std::string path = temp_dir() + "/clamp.pgm";
    render_heatmap({{1.5, -0.5}}, path);
    const std::string bytes = slurp(path);
    const std::string header = "P5 2 1 255\n";
    REQUIRE(bytes.size() == header.size() + 2);
    CHECK(static_cast<unsigned char>(bytes[header.size()]) == 0);
    CHECK(static_cast<unsigned char>(bytes[header.size() + 1]) == 255);
    CHECK_THROWS_AS(render_heatmap({}, path), std::invalid_argument);
    CHECK_THROWS_AS(render_heatmap({{0.5}, {0.5, 0.5}}, path), std::invalid_argument);
}

TEST_CASE("write failures carry the path") {
    const Trace trace = sample_trace(2, false);
    try {
        write_trace_csv(trace, "/nonexistent_dir_zz/trace.csv");
        FAIL("expected io_error");
    } catch (const io_error& e) {
        CHECK(std::string(e.what()).find("/nonexistent_dir_zz/trace.csv") != std::string::npos);
    }
}
