#pragma once

#include <stdexcept>
#include <string>

namespace uavsim {

// Invalid or inconsistent configuration (CLI exit code 1).
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or out-of-bounds input data such as trace files (exit code 2).
class data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition (exit code 3).
class contract_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace uavsim
