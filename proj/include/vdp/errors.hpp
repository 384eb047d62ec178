#pragma once
#include <stdexcept>
#include <string>
#include <vector>

namespace vdp {

// Status values double as process exit codes.
enum class Status { ok = 0, config_error = 2, runtime_error = 3, verify_failure = 4 };

struct Error : std::runtime_error {
    Status status;
    Error(Status s, const std::string& msg) : std::runtime_error(msg), status(s) {}
};

// Config validation collects every violation before failing.
struct ConfigError : Error {
    std::vector<std::string> violations;
    explicit ConfigError(std::vector<std::string> v)
        : Error(Status::config_error, join(v)), violations(std::move(v)) {}
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "invalid configuration:";
        for (const auto& x : v) s += "\n  - " + x;
        return s;
    }
};

struct NonPositiveRadius : Error {
    explicit NonPositiveRadius(double r)
        : Error(Status::runtime_error, "non-positive radius r=" + std::to_string(r)) {}
};

struct OriginUndefined : Error {
    OriginUndefined() : Error(Status::runtime_error, "polar angle undefined at the origin") {}
};

struct GuardRadiusHit : Error {
    double t;
    GuardRadiusHit(double t_, double r, double guard)
        : Error(Status::runtime_error,
                "radius " + std::to_string(r) + " fell below guard " + std::to_string(guard) +
                    " at t=" + std::to_string(t_)),
          t(t_) {}
};

struct NonFiniteDerivative : Error {
    double t;
    explicit NonFiniteDerivative(double t_)
        : Error(Status::runtime_error, "non-finite derivative at t=" + std::to_string(t_)), t(t_) {}
};

struct SingularDenominator : Error {
    explicit SingularDenominator(const std::string& msg) : Error(Status::runtime_error, msg) {}
};

struct DegenerateManifold : Error {
    explicit DegenerateManifold(const std::string& msg) : Error(Status::runtime_error, msg) {}
};

struct InsufficientExcitation : Error {
    explicit InsufficientExcitation(int usable)
        : Error(Status::runtime_error,
                "identification window has only " + std::to_string(usable) + " usable samples") {}
};

struct Infeasible : Error {
    explicit Infeasible(const std::string& msg) : Error(Status::runtime_error, msg) {}
};

struct AdmissibleSetViolation : Error {
    explicit AdmissibleSetViolation(const std::string& msg) : Error(Status::runtime_error, msg) {}
};

} // namespace vdp
