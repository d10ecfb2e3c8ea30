#pragma once

#include <stdexcept>
#include <string>

namespace gonstab {

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

struct collision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct assertion_failure : std::logic_error {
  using std::logic_error::logic_error;
};

struct verification_failure : std::runtime_error {
  double residual;
  std::string block_id;
  verification_failure(const std::string& what, double r, std::string id)
      : std::runtime_error(what), residual(r), block_id(std::move(id)) {}
};

struct integration_failure : std::runtime_error {
  int block = 0;
  explicit integration_failure(const std::string& what, int b = 0)
      : std::runtime_error(what), block(b) {}
};

struct convergence_failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct property_violation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct golden_mismatch : std::runtime_error {
  double deviation;
  golden_mismatch(const std::string& what, double d)
      : std::runtime_error(what), deviation(d) {}
};

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw domain_error(msg);
}

}  // namespace gonstab
