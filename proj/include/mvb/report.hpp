#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace mvb {

struct VerificationReport {
    std::string check;
    std::vector<int> dims;
    std::uint64_t seed = 0;
    int trials = 0;
    double maxResidual = 0.0;
    bool pass = false;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    nlohmann::ordered_json to_json() const;
};

// pass iff every part passes; parts are kept in order under details.parts
VerificationReport aggregate(const std::string& check, const std::vector<VerificationReport>& parts);

}  // namespace mvb
