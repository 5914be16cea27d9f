#pragma once

#include <stdexcept>
#include <string>

namespace hcx {

// All kernel failures are reported through this type. Messages are meant to
// be shown verbatim to the user, so they carry names and offending values.
class error : public std::runtime_error {
  public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& what) { throw error(what); }

inline void require(bool cond, const std::string& what) {
    if (!cond)
        throw error(what);
}

} // namespace hcx
