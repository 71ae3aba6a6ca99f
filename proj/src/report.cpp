#include "slstar/report.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "slstar/numeric.hpp"

namespace slstar {

std::string Report::render() const {
    std::string hashed;
    hashed += "report-version: 1\n";
    hashed += "experiment: " + experiment + "\n";
    if (!descriptor.empty()) hashed += "descriptor: " + descriptor + "\n";
    hashed += "command: " + command + "\n";
    hashed += "seed: " + std::to_string(seed) + "\n";
    if (!property.empty()) hashed += "property: " + property + "\n";
    for (const auto& [k, v] : records) hashed += "record: " + k + " = " + v + "\n";
    hashed += std::string("verdict: ") + (pass ? (expected_refusal ? "REFUSAL" : "PASS") : "FAIL") +
              "\n";

    auto now = std::chrono::system_clock::now();
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch()).count();
    std::string out = hashed;
    out += "timestamp: " + std::to_string(secs) + "\n";
    char hex[32];
    snprintf(hex, sizeof hex, "%016llx",
             static_cast<unsigned long long>(fnv1a64(hashed)));
    out += "integrity: fnv1a64=" + std::string(hex) + "\n";
    return out;
}

std::string write_report(const Report& r, const std::string& dir) {
    std::filesystem::create_directories(dir);
    std::string path = dir + "/" + r.experiment + ".report";
    std::ofstream f(path);
    f << r.render();
    return path;
}

}  // namespace slstar
