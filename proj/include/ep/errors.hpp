#pragma once
#include <stdexcept>
#include <string>

namespace ep {

// Malformed input: bad JSON shape, unknown keys, unparsable values.
struct schema_error : std::runtime_error {
  explicit schema_error(const std::string& m) : std::runtime_error(m) {}
};

// A value cannot be expressed in the chosen model (e.g. a unit outside the
// declared prime support of a rational units model).
struct encoding_error : schema_error {
  explicit encoding_error(const std::string& m) : schema_error(m) {}
};

// Mathematically meaningless request: q_v at a non-regular vertex, kernel
// coordinates of an element outside the kernel ideal, and similar.
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& m) : std::runtime_error(m) {}
};

// A capped iteration hit its cap without settling.
struct divergence_error : std::runtime_error {
  explicit divergence_error(const std::string& m) : std::runtime_error(m) {}
};

// Broken internal invariant; indicates a bug, not bad input.
struct internal_error : std::logic_error {
  explicit internal_error(const std::string& m) : std::logic_error(m) {}
};

inline void check_internal(bool ok, const std::string& msg) {
  if (!ok) throw internal_error(msg);
}

}  // namespace ep
