#include <doctest.h>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <regex>
#include <string>

using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string out;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(LACMGF_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

json load_schema(const std::string& name) {
    std::ifstream in(std::string(LACMGF_SCHEMA_DIR) + "/" + name);
    REQUIRE(in.good());
    return json::parse(in);
}

// Validator for the subset of JSON Schema the shipped schemas use:
// type, required, properties, items, enum, pattern, minItems, maxItems.
bool validates(const json& value, const json& schema, std::string* why) {
    if (schema.contains("type")) {
        const std::string t = schema["type"];
        const bool ok = (t == "object" && value.is_object()) ||
                        (t == "array" && value.is_array()) ||
                        (t == "string" && value.is_string()) ||
                        (t == "boolean" && value.is_boolean()) ||
                        (t == "integer" && value.is_number_integer()) ||
                        (t == "number" && value.is_number());
        if (!ok) {
            *why = "type mismatch: expected " + t + " at " + value.dump().substr(0, 60);
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool hit = false;
        for (const auto& e : schema["enum"]) hit = hit || e == value;
        if (!hit) {
            *why = "enum mismatch";
            return false;
        }
    }
    if (schema.contains("pattern") && value.is_string()) {
        if (!std::regex_match(value.get<std::string>(), std::regex(schema["pattern"].get<std::string>()))) {
            *why = "pattern mismatch on " + value.get<std::string>();
            return false;
        }
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>())) {
                    *why = "missing required key " + key.get<std::string>();
                    return false;
                }
        if (schema.contains("properties"))
            for (const auto& [key, sub] : schema["properties"].items())
                if (value.contains(key) && !validates(value[key], sub, why)) return false;
    }
    if (value.is_array()) {
        if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>()) {
            *why = "too few items";
            return false;
        }
        if (schema.contains("maxItems") && value.size() > schema["maxItems"].get<std::size_t>()) {
            *why = "too many items";
            return false;
        }
        if (schema.contains("items"))
            for (const auto& item : value)
                if (!validates(item, schema["items"], why)) return false;
    }
    return true;
}

void check_against_schema(const std::string& payload, const std::string& schema_name) {
    std::string why;
    const bool ok = validates(json::parse(payload), load_schema(schema_name), &why);
    CHECK_MESSAGE(ok, schema_name, ": ", why);
}

} // namespace

TEST_CASE("cli: bessel-coeffs") {
    const auto r = run_cli("bessel-coeffs --order 6");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1/2,-1/16,1/72\n");

    const auto j = run_cli("bessel-coeffs --order 8 --format json");
    CHECK(j.exit_code == 0);
    check_against_schema(j.out, "bessel_coeffs.schema.json");
    CHECK(json::parse(j.out)["coefficients"][3] == "-11/3072");

    CHECK(run_cli("bessel-coeffs --order 5").exit_code == 2);
}

TEST_CASE("cli: mgf json and cross-method agreement within printed bounds") {
    const auto r = run_cli("mgf --gen geometric:2:8 --lambda 0.2 --method both");
    CHECK(r.exit_code == 0);
    check_against_schema(r.out, "mgf.schema.json");
    const json arr = json::parse(r.out);
    REQUIRE(arr.size() == 2);
    const double lq = arr[0]["log_value"], ld = arr[1]["log_value"];
    const double bound = arr[0]["error_bound"].get<double>() + arr[1]["error_bound"].get<double>();
    CHECK(std::abs(lq - ld) <= bound);

    // byte-identical reruns
    const auto again = run_cli("mgf --gen geometric:2:8 --lambda 0.2 --method both");
    CHECK(again.out == r.out);

    const auto csv = run_cli("mgf --gen geometric:2:6 --lambda-grid 0.05:0.2:0.05 --method dio --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("lambda,lambda_n\n", 0) == 0);
}

TEST_CASE("cli: blocks JSON and infeasibility exit code") {
    const auto r = run_cli("blocks --n 64 --q 2 --lambda 0.05");
    CHECK(r.exit_code == 0);
    check_against_schema(r.out, "blocks.schema.json");
    const json j = json::parse(r.out);
    CHECK(j["L"] == 10);
    CHECK(j["s"] == 4);

    // N = 12 cannot host a complete (L, s) = (10, 4) pair
    CHECK(run_cli("blocks --n 12 --q 2 --lambda 0.05").exit_code == 3);
}

TEST_CASE("cli: count and probe CSV") {
    const auto r = run_cli("count --gen geometric:2:24 --kind three --block-l 8 --block-s 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("kind,block,threshold,count,L\n", 0) == 0);
    CHECK(r.out.find("three_term,1,2,7,8") != std::string::npos);

    const auto p = run_cli("probe --gen geometric:2:48 --kind three --l-values 8,16");
    CHECK(p.exit_code == 0);
    CHECK(p.out.rfind("L,max_count,slope\n", 0) == 0);

    // two-term drops the diagonal by default; powers of two have no other
    // pair within n_{i^-}, so every block row counts 0
    const auto two = run_cli("count --gen geometric:2:24 --kind two --block-l 8 --block-s 4");
    CHECK(two.exit_code == 0);
    CHECK(two.out.find("two_term,1,2,0,8") != std::string::npos);
    const auto two_diag =
        run_cli("count --gen geometric:2:24 --kind two --block-l 8 --block-s 4 --include-diagonal");
    CHECK(two_diag.out.find("two_term,1,2,8,8") != std::string::npos);
    for (const char* kind : {"ppmm", "pppm"})
        CHECK(run_cli(std::string("count --gen geometric:2:24 --kind ") + kind + " --block-l 6")
                  .exit_code == 0);
}

TEST_CASE("cli: fit, envelope, rate, tail formats") {
    const auto f = run_cli("fit --limit pair --format json");
    CHECK(f.exit_code == 0);
    check_against_schema(f.out, "fit.schema.json");

    const auto fc = run_cli("fit --gen geometric:2:8 --method dio --format csv");
    CHECK(fc.exit_code == 0);
    CHECK(fc.out.rfind("lambda,lambda_n\n", 0) == 0);

    const auto e = run_cli("envelope --gen geometric:2:10 --method dio");
    CHECK(e.exit_code == 0);
    check_against_schema(e.out, "envelope.schema.json");

    const auto rt = run_cli("rate --quadratic --t 0.2 --t 0.4");
    CHECK(rt.exit_code == 0);
    CHECK(rt.out.rfind("t,rate\n", 0) == 0);

    const auto rj = run_cli("rate --quadratic --t 0.2 --format json");
    CHECK(rj.exit_code == 0);
    check_against_schema(rj.out, "rate.schema.json");

    const auto t = run_cli("tail --gen geometric:2:6 --lambda-scale 0.4 --t 0.3 --grid-points 8192");
    CHECK(t.exit_code == 0);
    CHECK(t.out.rfind("t,measure,mdp_normalized,gaussian_target\n", 0) == 0);

    const auto tj = run_cli(
        "tail --gen geometric:2:6 --lambda-scale 0.4 --t 0.3 --grid-points 8192 --format json");
    CHECK(tj.exit_code == 0);
    check_against_schema(tj.out, "tail.schema.json");
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli("frobnicate").exit_code == 64);
    CHECK(run_cli("").exit_code == 64);
    CHECK(run_cli("mgf --gen geometric:2:8").exit_code == 2);          // no lambda
    CHECK(run_cli("mgf --lambda 0.2").exit_code == 2);                 // no sequence
    CHECK(run_cli("mgf --gen geometric:2:40 --lambda 0.5 --method quad").exit_code == 3);
    CHECK(run_cli("mgf --gen nonsense:1 --lambda 0.1").exit_code == 2);
    CHECK(run_cli("count --gen geometric:2:24 --kind five --block-l 8").exit_code == 2);
}

TEST_CASE("cli: sequence files and the grid cap variable") {
    const std::string path = "lacmgf_cli_seq.txt";
    {
        std::ofstream out(path);
        out << "# three frequencies\n1\n2\n3\n";
    }
    const auto r = run_cli("mgf --seq " + path + " --lambda 0.3 --method both");
    CHECK(r.exit_code == 0);
    check_against_schema(r.out, "mgf.schema.json");
    std::remove(path.c_str());

    // LACMGF_MAX_GRID caps quadrature grids
    const std::string cmd = std::string("LACMGF_MAX_GRID=100 ") + LACMGF_CLI_PATH +
                            " mgf --gen geometric:2:8 --lambda 0.5 --method quad 2>/dev/null";
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 3);
}
