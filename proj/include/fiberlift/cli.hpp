#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fiberlift {

struct RunConfig {
    std::string command;
    std::vector<std::string> inputs;
    std::size_t length = 1000000;
    int depth = 3;
    std::optional<double> tolerance;
    std::uint64_t seed = 0;
    int max_period = 6;
    std::string format = "json";
    std::string measure_path;
    std::string measure_on = "x";
    std::string family;
    int modulus = 0;
    std::string vector;
    bool cross_validate = true;
};

/// Exit status: 0 success, 2 refusal (a precondition does not hold), 1 internal error.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv into a config and runs it.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace fiberlift
