#pragma once

#include <cstdint>

#include "mvb/paircalc.hpp"
#include "mvb/report.hpp"

namespace mvb {

VerificationReport lattice_suite();
VerificationReport duality_suite();
VerificationReport fpgroup_suite();
// every module, in a fixed order
VerificationReport full_suite(const TrivDVB& D, int trials, std::uint64_t seed);

}  // namespace mvb
