#pragma once

#include <iosfwd>
#include <string>

#include "kerncert/formula.hpp"

namespace kerncert {

// Canonical byte serialization: "p cnf <nv> <nc>\n" then one clause per
// line, literals space-separated, terminated by 0. Fingerprints hash these
// exact bytes.
void dimacs_write(const Formula& f, std::ostream& out);
std::string dimacs_string(const Formula& f);
uint64_t formula_fingerprint(const Formula& f);

// Accepts comment lines starting with 'c'. Parse errors carry line numbers.
Formula dimacs_read(std::istream& in);
Formula dimacs_read_string(const std::string& text);

// Sidecar semantic map: "<var-id> <semantic-name>" per line.
void semantic_map_write(const Formula& f, std::ostream& out);

} // namespace kerncert
