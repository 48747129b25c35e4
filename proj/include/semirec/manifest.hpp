#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "semirec/catalogue.hpp"

namespace semirec {

/// Where an expected value comes from.
enum class Source {
    stated,     // asserted in the source text
    oracle,     // produced by an independent computation
    elementary, // follows from the definitions by inspection
};

std::string to_string(Source s);

/// One executable claim: run `operation` with `args` and compare with `expected`.
struct Expectation {
    std::string operation;
    nlohmann::json args;
    nlohmann::json expected;
    Source source = Source::oracle;
    std::string claim;
    std::string note;
};

struct ExampleManifest {
    std::string name;
    ExampleParams params;
    std::string truncation;
    std::vector<std::string> conventions;
    std::vector<std::string> discrepancies;
    std::vector<Expectation> expectations;
};

ExampleManifest manifest(std::string_view name);

struct ExpectationResult {
    bool pass = false;
    nlohmann::json actual;
};

/// Executes one entry against the example it belongs to.
ExpectationResult run_expectation(const ExampleManifest& m, const Expectation& e);

/// Runs `operation` on generators built from `m` and returns the raw result object.
nlohmann::json run_operation(const ExampleManifest& m, const std::string& operation, const nlohmann::json& args);

/// Every key of `expected` must match; a "tol" key turns "value" into a rational tolerance check.
bool matches(const nlohmann::json& actual, const nlohmann::json& expected);

nlohmann::json manifest_to_json(const ExampleManifest& m);

} // namespace semirec
