#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace slstar {

// Line-oriented key-value experiment report with a trailing integrity hash.
// The timestamp line is excluded from the hash so that replays with the same
// command line and seed are byte-comparable.
struct Report {
    std::string experiment;
    std::string descriptor;
    std::string command;
    uint64_t seed = 0;
    std::string property;  // statement of the property being exercised
    std::vector<std::pair<std::string, std::string>> records;
    bool pass = true;
    bool expected_refusal = false;  // exit code 1

    void add(const std::string& key, const std::string& value) {
        records.emplace_back(key, value);
    }
    void add_count(const std::string& key, uint64_t value) {
        records.emplace_back(key, std::to_string(value));
    }
    void fail(const std::string& why) {
        pass = false;
        records.emplace_back("failure", why);
    }

    int exit_code() const { return pass ? (expected_refusal ? 1 : 0) : 2; }
    std::string render() const;
};

// writes to <dir>/<experiment>.report; creates the directory
std::string write_report(const Report& r, const std::string& dir);

}  // namespace slstar
