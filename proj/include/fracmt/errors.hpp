#pragma once

#include <stdexcept>
#include <string>

namespace fracmt {

// Error taxonomy, mirrored by the CLI exit codes:
//   domain_error / unsupported_error  -> 1 (bad inputs, out-of-contract arguments)
//   convergence_error / overflow_error -> 2 (numeric failure)
//   verification_error                -> 3 (cross-check between two routes failed)

class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& msg) : std::domain_error(msg) {}
};

// Argument is finite and meaningful but outside the implemented regime
// (e.g. 2F1 with |z| > 0.9, where no transformation formulas are provided).
class unsupported_error : public std::domain_error {
public:
    explicit unsupported_error(const std::string& msg) : std::domain_error(msg) {}
};

class overflow_error : public std::runtime_error {
public:
    explicit overflow_error(const std::string& msg) : std::runtime_error(msg) {}
};

class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

class verification_error : public std::runtime_error {
public:
    explicit verification_error(const std::string& msg) : std::runtime_error(msg) {}
};

}
