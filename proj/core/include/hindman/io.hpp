#pragma once

// Line-oriented text formats for colorings and solutions.
//
//   hindman-coloring 1
//   rule <arity> <k> <expression>
//   table <arity> <k> <lo> <hi>      one block per $i in the expression
//   colors <c_0> <c_1> ...           in Coloring::table_domain order
//   default <expression>             optional fallback of the table above
//
//   hindman-solution 1
//   shape plain | apart <t> | blocks | polarized
//   set <x_1> <x_2> ...              one line per part
//   lengths <length spec>            optional
//   color <c>                        optional
//
// Blank lines and lines starting with '#' are ignored.

#include "hindman/coloring.hpp"
#include "hindman/principles.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace hindman {

std::string write_coloring(const Coloring& c);
/// ParseError on malformed input.
Coloring read_coloring(std::string_view text);

std::string write_solution(const Solution& s);
Solution read_solution(std::string_view text);

/// Whole-file helpers; Error on I/O failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace hindman
