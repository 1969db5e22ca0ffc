#pragma once

#include <iosfwd>
#include <string>

#include "exactfd/linalg3.hpp"

namespace exactfd {

/// Exit codes: 0 success, 1 numerical failure, 2 usage error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Named matrix, inline "a,b,c;d,e,f;g,h,i", or a JSON file {"rows": [...]}.
Mat3 parse_matrix_arg(const std::string& arg);
Vec3 parse_vec_arg(const std::string& arg);

}  // namespace exactfd
