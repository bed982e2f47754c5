#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "nptlab/io.hpp"
#include "nptlab/rng.hpp"

using namespace nptlab;
namespace fs = std::filesystem;

namespace {

const fs::path kTmp = fs::path(NPTLAB_CLI_PATH).parent_path() / "test_io_tmp";

int run_cli(const std::string& args) {
    const std::string cmd = std::string(NPTLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

io::json load_schema(const std::string& name) {
    return io::read_json_file(std::string(NPTLAB_SCHEMA_DIR) + "/" + name);
}

void write_uniform_spec(const fs::path& p) {
    io::write_text_file(p.string(),
                        R"({"method":"MethodII","d1":3,"d2":3,)"
                        R"("schmidt_coeffs":[[0.5773502691896258,0.5773502691896258,0.5773502691896257]]})"
                        "\n");
}

}  // namespace

TEST_CASE("operator and state JSON round-trips") {
    Rng rng(3);
    Matrix m(6, 6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) m(i, j) = rng.cgauss();
    ComplexOperator op(std::move(m), 2, 3);
    ComplexOperator back = io::operator_from_json(io::json::parse(io::to_json(op).dump()));
    CHECK(back.dimA == 2);
    CHECK(back.dimB == 3);
    for (size_t i = 0; i < op.m.size(); ++i) CHECK(back.m.data()[i] == op.m.data()[i]);

    std::vector<cplx> amp(6);
    for (auto& z : amp) z = rng.cgauss();
    qcore::normalize(amp);
    BipartitePureState psi(amp, 2, 3);
    BipartitePureState sb = io::state_from_json(io::json::parse(io::to_json(psi).dump()));
    for (size_t i = 0; i < amp.size(); ++i) CHECK(sb.amp[i] == psi.amp[i]);
}

TEST_CASE("spec JSON round-trip and validation diagnostics") {
    constructions::ConstructionSpec spec;
    spec.method = constructions::Method::MethodI;
    spec.d1 = spec.d2 = 4;
    spec.schmidt_coeffs = {{0.6, 0.8}};
    spec.alpha = 0.25;
    spec.pair_i = 0;
    spec.pair_j = 1;
    spec.epsilon = 0.125;

    constructions::ConstructionSpec back =
        io::spec_from_json(io::json::parse(io::to_json(spec).dump()));
    CHECK(back.method == spec.method);
    CHECK(back.d1 == 4);
    CHECK(back.alpha == 0.25);
    CHECK(back.epsilon == 0.125);
    CHECK(back.schmidt_coeffs == spec.schmidt_coeffs);

    CHECK_THROWS_AS(io::spec_from_json(io::json::parse(R"({"method":"MethodX","d1":3,"d2":3})")),
                    PreconditionError);
    CHECK_THROWS_AS(io::spec_from_json(io::json::parse(
                        R"({"method":"MethodII","d1":3,"d2":3,"schmidt_coeffs":[[0.6,0.8]]})")),
                    PreconditionError);  // k < 3
}

TEST_CASE("schema validator: subset semantics") {
    io::json schema = io::json::parse(R"({
        "type": "object",
        "required": ["a", "b"],
        "properties": {
            "a": { "type": "integer" },
            "b": { "type": "array", "items": { "type": "number" } },
            "c": { "type": "string", "enum": ["x", "y"] }
        }
    })");
    CHECK(io::validate_schema(schema, io::json::parse(R"({"a":1,"b":[1.5,2]})")).empty());
    CHECK(!io::validate_schema(schema, io::json::parse(R"({"a":1.5,"b":[]})")).empty());
    CHECK(!io::validate_schema(schema, io::json::parse(R"({"a":1})")).empty());
    CHECK(!io::validate_schema(schema, io::json::parse(R"({"a":1,"b":["s"]})")).empty());
    CHECK(!io::validate_schema(schema, io::json::parse(R"({"a":1,"b":[],"c":"z"})")).empty());
}

TEST_CASE("construction spec file validates against the shipped schema") {
    fs::create_directories(kTmp);
    const fs::path spec_path = kTmp / "uniform.json";
    write_uniform_spec(spec_path);
    io::json doc = io::read_json_file(spec_path.string());
    auto errs = io::validate_schema(load_schema("construction_spec.schema.json"), doc);
    for (const auto& e : errs) MESSAGE(e);
    CHECK(errs.empty());
}

TEST_CASE("CLI: artifacts validate against shipped schemas") {
    fs::create_directories(kTmp);
    const fs::path spec_path = kTmp / "uniform.json";
    write_uniform_spec(spec_path);
    const std::string spec = spec_path.string();

    struct Run {
        std::string args;
        std::string out;
        std::string schema;
    };
    const Run runs[] = {
        {"seesaw --spec " + spec + " --eps 0.5 --copies 1 --restarts 8 --seed 7 --out ",
         "seesaw.json", "seesaw-report.schema.json"},
        {"threshold --spec " + spec + " --copies 1 --restarts 8 --seed 7 --out ",
         "threshold.json", "threshold-report.schema.json"},
        {"lemma1 --k 3 --copies 2 --trials 3 --seed 7 --out ", "lemma1.json",
         "lemma1-report.schema.json"},
        {"geometry --d 3 --k 3 --format json --out ", "geometry.json",
         "geometry-report.schema.json"},
        {"compare-dur --d 3 --out ", "dur.json", "compare-dur-report.schema.json"},
        {"witness --spec " + spec + " --eps 0.25 --out ", "witness.json",
         "witness-report.schema.json"},
        {"ppt-check --spec " + spec + " --eps 0.0 --out ", "ppt.json",
         "ppt-check-report.schema.json"},
        {"construct --spec " + spec + " --eps 0.5 --out ", "construct.json",
         "construct-report.schema.json"},
    };
    for (const Run& r : runs) {
        const fs::path out = kTmp / r.out;
        REQUIRE(run_cli(r.args + out.string()) == 0);
        io::json doc = io::read_json_file(out.string());
        auto errs = io::validate_schema(load_schema(r.schema), doc);
        for (const auto& e : errs) MESSAGE(r.out, ": ", e);
        CHECK(errs.empty());
        // envelope schema applies to every artifact
        CHECK(io::validate_schema(load_schema("envelope.schema.json"), doc).empty());
    }
}

TEST_CASE("CLI: ppt-check accepts a raw operator file") {
    fs::create_directories(kTmp);
    // I/4 as a plain operator document
    ComplexOperator mixed = ComplexOperator::zero(2, 2);
    for (int i = 0; i < 4; ++i) mixed.m(i, i) = 0.25;
    const fs::path opf = kTmp / "mixed.json";
    io::write_text_file(opf.string(), io::to_json(mixed).dump(2) + "\n");

    const fs::path out = kTmp / "pptin.json";
    REQUIRE(run_cli("ppt-check --in " + opf.string() + " --out " + out.string()) == 0);
    io::json doc = io::read_json_file(out.string());
    CHECK(doc["result"]["ppt"].get<bool>());
    CHECK(std::abs(doc["result"]["min_pt_eigenvalue"].get<double>() - 0.25) < 1e-12);

    // --spec and --in together is a usage error
    const fs::path spec_path = kTmp / "uniform.json";
    write_uniform_spec(spec_path);
    CHECK(run_cli("ppt-check --spec " + spec_path.string() + " --in " + opf.string()) == 2);
}

TEST_CASE("CLI: sweep emits the documented grid") {
    fs::create_directories(kTmp);
    const fs::path spec_path = kTmp / "uniform.json";
    write_uniform_spec(spec_path);
    const fs::path out = kTmp / "sweep.csv";
    REQUIRE(run_cli("sweep --spec " + spec_path.string() +
                    " --copies 1 --eps-grid 0:0.2:0.01 --restarts 4 --seed 3 --out " +
                    out.string()) == 0);
    std::istringstream in(slurp(out));
    std::string line;
    int lines = 0;
    while (std::getline(in, line))
        if (!line.empty()) ++lines;
    CHECK(lines == 22);  // header + 21 rows
    in.clear();
    in.seekg(0);
    std::getline(in, line);
    CHECK(line == "epsilon,n,f_estimate,witness_found,seed");
}

TEST_CASE("CLI: byte-identical artifacts for identical config and seed") {
    fs::create_directories(kTmp);
    const fs::path spec_path = kTmp / "uniform.json";
    write_uniform_spec(spec_path);
    const fs::path o1 = kTmp / "det1.json", o2 = kTmp / "det2.json";
    const std::string args = "seesaw --spec " + spec_path.string() +
                             " --eps 0.3 --copies 2 --restarts 8 --seed 99 --out ";
    REQUIRE(run_cli(args + o1.string()) == 0);
    REQUIRE(run_cli(args + o2.string()) == 0);
    const std::string b1 = slurp(o1), b2 = slurp(o2);
    CHECK(!b1.empty());
    CHECK(b1 == b2);
}

TEST_CASE("CLI: exit codes distinguish user error from success") {
    fs::create_directories(kTmp);
    const fs::path bad = kTmp / "bad.json";
    io::write_text_file(bad.string(), "{ not json ");
    CHECK(run_cli("seesaw --spec " + bad.string() + " --out " + (kTmp / "x.json").string()) == 2);

    const fs::path badspec = kTmp / "badspec.json";
    io::write_text_file(badspec.string(),
                        R"({"method":"MethodII","d1":3,"d2":3,"schmidt_coeffs":[[0.6,0.8]]})");
    CHECK(run_cli("seesaw --spec " + badspec.string()) == 2);

    // size cap exceeded is a precondition violation
    const fs::path spec_path = kTmp / "uniform.json";
    write_uniform_spec(spec_path);
    CHECK(run_cli("seesaw --spec " + spec_path.string() + " --copies 9") == 2);
    CHECK(run_cli("--version") == 0);
}

TEST_CASE("format_double: shortest round-trip formatting") {
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(1.0 / 3.0) == "0.3333333333333333");
    const double v = 0.1178511301977579;
    CHECK(std::stod(io::format_double(v)) == v);
}
