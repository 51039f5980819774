#include "mvb/report.hpp"

#include <algorithm>

namespace mvb {

nlohmann::ordered_json VerificationReport::to_json() const {
    nlohmann::ordered_json j;
    j["check"] = check;
    j["dims"] = dims;
    j["seed"] = seed;
    j["trials"] = trials;
    j["maxResidual"] = maxResidual;
    j["pass"] = pass;
    if (!details.empty()) j["details"] = details;
    return j;
}

VerificationReport aggregate(const std::string& check, const std::vector<VerificationReport>& parts) {
    VerificationReport r;
    r.check = check;
    r.pass = true;
    r.seed = parts.empty() ? 0 : parts.front().seed;
    r.details["parts"] = nlohmann::ordered_json::array();
    for (const auto& p : parts) {
        r.pass = r.pass && p.pass;
        r.trials += p.trials;
        r.maxResidual = std::max(r.maxResidual, p.maxResidual);
        r.details["parts"].push_back(p.to_json());
    }
    return r;
}

}  // namespace mvb
