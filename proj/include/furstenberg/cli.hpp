#pragma once

// Batch front end. run_command takes the arguments after the program name,
// reads an instance document from `in` (or --input FILE) and writes one JSON
// document to `out`: a result on success, an error object otherwise.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "furstenberg/instance_io.hpp"

namespace furstenberg {

enum ExitCode : int {
  kExitOk = 0,
  kExitMalformed = 1,
  kExitDomain = 2,
  kExitNoConvergence = 3,
  kExitSelftestFailed = 4,
};

struct InstanceRequest {
  int n = 2;
  Field field = Field::Real;
  std::size_t q = 3;
  /// generic (= tuple), tuple, triple, pairwise, nopp or w0opp.
  std::string mode = "generic";
};

/// Seeded random instance whose flags pass the requested genericity check
/// with margin above 10 * pivot_rel. Throws InvalidArgument for an arity the
/// mode does not accept and GenerationExhausted after 10^4 rejections.
InstanceDoc generate_instance(const InstanceRequest& request, std::uint64_t seed,
                              double pivot_rel = kDefaultPivotRel);

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out);

}  // namespace furstenberg
