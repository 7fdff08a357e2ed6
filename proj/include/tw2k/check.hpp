#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tw2k {

// Thrown when a caller violates a documented precondition.
struct precondition_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Thrown when input is outside the supported domain (e.g. adjacent pair
// handed to a separator routine).
struct unsupported_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Thrown when a reduction rule is asked to fire but its certificate or
// side conditions do not hold.
struct rejected_application : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a pluggable approximator breaks its contract.
struct approximator_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a structural invariant that should hold by proof is observed
// to fail. These checks stay enabled in release builds; the test suites
// require that none ever fires.
struct invariant_violation : std::logic_error {
    using std::logic_error::logic_error;
};

namespace checks {
inline std::uint64_t& performed() {
    static std::uint64_t n = 0;
    return n;
}
inline std::uint64_t& failed() {
    static std::uint64_t n = 0;
    return n;
}
}  // namespace checks

inline void check(bool cond, const char* what) {
    ++checks::performed();
    if (!cond) {
        ++checks::failed();
        throw invariant_violation(std::string("invariant: ") + what);
    }
}

inline void require(bool cond, const char* what) {
    if (!cond) throw precondition_error(std::string("precondition: ") + what);
}

}  // namespace tw2k
