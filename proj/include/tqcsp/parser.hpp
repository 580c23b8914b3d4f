#pragma once

#include <string>
#include <string_view>

#include "tqcsp/catalogue.hpp"
#include "tqcsp/formula.hpp"

namespace tqcsp {

// Reads the line-based instance format:
//
//   qcsp v1
//   E x
//   A y
//   C x != y | x >= z
//   C M+ x y z
//
// Relation uses are kept as written; QcspInstance::cnf() expands them.
QcspInstance parse_instance(std::string_view text);

std::string print_instance(const QcspInstance& inst);
std::string print_instance(const OhInstance& inst);

// Relation files: "rel v1", "arity n", optional "name N", then C lines over x1..xn.
TemporalRelation parse_relation(std::string_view text);
std::string print_relation(const TemporalRelation& r);

std::string read_file(const std::string& path);

}  // namespace tqcsp
