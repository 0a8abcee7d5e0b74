#pragma once

#include <stdexcept>
#include <string>

namespace rosen {

enum class errc {
  hurst,
  beta,
  gamma,
  domain,
  n_too_small,
  mesh,
  singular,
  diagonal,
  quad_budget,
  no_convergence,
  budget,
  input,
  io,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::hurst: return "ERR_HURST";
    case errc::beta: return "ERR_BETA";
    case errc::gamma: return "ERR_GAMMA";
    case errc::domain: return "ERR_DOMAIN";
    case errc::n_too_small: return "ERR_N";
    case errc::mesh: return "ERR_MESH";
    case errc::singular: return "ERR_SINGULAR";
    case errc::diagonal: return "ERR_DIAGONAL";
    case errc::quad_budget: return "ERR_QUAD_BUDGET";
    case errc::no_convergence: return "ERR_NO_CONVERGENCE";
    case errc::budget: return "ERR_BUDGET";
    case errc::input: return "ERR_INPUT";
    case errc::io: return "ERR_IO";
  }
  return "ERR_UNKNOWN";
}

// All recoverable failures surface as this exception; the CLI maps codes to
// exit statuses.
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace rosen
