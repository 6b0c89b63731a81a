#pragma once

#include <stdexcept>
#include <string>

namespace tempera {

enum class errc {
    parse,     // malformed input text / JSON
    invalid,   // violated invariant or precondition
    domain,    // value outside the partially defined domain
    limit,     // resource guard tripped (term cap)
    internal,  // soundness failure or broken internal assumption
};

class error : public std::runtime_error {
  public:
    error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    errc kind() const { return kind_; }

  private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& msg) { throw error(kind, msg); }

}  // namespace tempera
