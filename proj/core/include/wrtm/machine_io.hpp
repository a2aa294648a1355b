#pragma once

#include <string>
#include <string_view>

#include "wrtm/machine.hpp"

namespace wrtm {

// Line-oriented machine format; '#' starts a comment.
//
//   machine <name>
//   endmarked <true|false>
//   states <id>+
//   input <symbol>*
//   work <symbol>+          (all input symbols; "_" and endmarkers implicit)
//   initial <state>
//   final <state>*
//   trans <state> <symbol> <state> <symbol> <L|R>
//
// Throws ParseError on syntax errors and InvalidMachine when the parsed
// machine violates a structural rule.
Machine parse_machine(std::string_view text);

struct SerializeOptions {
  // Sort transitions by (state, symbol) instead of insertion order.
  bool canonical = false;
};

std::string serialize_machine(const Machine& m, SerializeOptions opts = {});

Machine load_machine(const std::string& path);
void save_machine(const Machine& m, const std::string& path, SerializeOptions opts = {});

}  // namespace wrtm
