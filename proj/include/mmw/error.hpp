#pragma once

#include <stdexcept>
#include <string>

namespace mmw {

// Error categories; the CLI maps them onto process exit codes
// (config = 2, physics = 3, io = 4).
enum class errc { config = 2, physics = 3, io = 4 };

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    errc kind() const noexcept { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void throw_config(const std::string& msg) { throw error(errc::config, msg); }
[[noreturn]] inline void throw_physics(const std::string& msg) { throw error(errc::physics, msg); }
[[noreturn]] inline void throw_io(const std::string& msg) { throw error(errc::io, msg); }

} // namespace mmw
