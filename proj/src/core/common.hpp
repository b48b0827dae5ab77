#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace oscillab {

using cplx = std::complex<double>;

// Error categories. Mirrored one-to-one by the C API status codes, so keep
// the ordering stable.
enum class errc {
  ok = 0,
  argument,        // bad argument value
  range,           // abscissa outside the tabulated domain
  pole,            // evaluation at/too close to a pole
  convergence,     // outside the region of absolute convergence
  config,          // inconsistent contour/radius/pole configuration
  eval,            // a quadrature node hit a singularity
  consistency,     // non-conjugate-closed expression, imaginary residue
  extrapolation,   // probe sequence did not settle
  degenerate,      // prediction undefined (z = 1)
  io,              // file open/read/write failure
  bad_magic,       // cache: wrong magic
  bad_version,     // cache: unsupported version
  truncated,       // cache: payload shorter than header claims
  mismatch,        // cache: kind/theta differ from the requested ones
};

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool ok, errc code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace oscillab
